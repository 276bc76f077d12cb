#include "orlab/step_function.hpp"

#include <algorithm>
#include <cmath>

#include "orlab/extended.hpp"

namespace olab {

StepFunction StepFunction::from_atoms(std::vector<Atom> atoms, double tail) {
  std::stable_sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.value > b.value; });
  StepFunction f;
  f.tail_ = tail;
  double m = 0;
  for (const auto& a : atoms) {
    if (!(a.weight > 0)) continue;
    if (a.value < tail) throw DomainError("step function: tail exceeds an atom value");
    m += a.weight;
    if (!f.values_.empty() && f.values_.back() == a.value) {
      f.ends_.back() = m;
    } else {
      f.values_.push_back(a.value);
      f.ends_.push_back(m);
    }
  }
  return f;
}

double StepFunction::operator()(double t) const {
  const auto it = std::upper_bound(ends_.begin(), ends_.end(), t);
  if (it == ends_.end()) return tail_;
  return values_[std::size_t(it - ends_.begin())];
}

double StepFunction::distribution(double s) const {
  if (tail_ > s) return kInf;
  double m = 0;
  for (std::size_t j = 0; j < values_.size() && values_[j] > s; ++j) m = ends_[j];
  return m;
}

double StepFunction::integral(const std::function<double(double)>& g) const {
  double acc = 0, prev = 0;
  for (std::size_t j = 0; j < values_.size(); ++j) {
    acc += ext_mul(g(values_[j]), ends_[j] - prev);
    prev = ends_[j];
  }
  const double gt = g(tail_);
  if (gt != 0.0) acc += ext_mul(gt, kInf);
  return acc;
}

double StepFunction::integral() const {
  return integral([](double v) { return v; });
}

double StepFunction::integral_to(double t) const {
  double acc = 0, prev = 0;
  for (std::size_t j = 0; j < values_.size(); ++j) {
    if (t <= prev) return acc;
    acc += values_[j] * (std::min(t, ends_[j]) - prev);
    prev = ends_[j];
  }
  if (t > prev) acc += ext_mul(tail_, t - prev);
  return acc;
}

StepFunction StepFunction::map(const std::function<double(double)>& f) const {
  std::vector<Atom> atoms;
  double prev = 0;
  for (std::size_t j = 0; j < values_.size(); ++j) {
    atoms.push_back({f(values_[j]), ends_[j] - prev});
    prev = ends_[j];
  }
  return from_atoms(std::move(atoms), f(tail_));
}

std::vector<double> StepFunction::left_endpoints() const {
  std::vector<double> out{0.0};
  out.insert(out.end(), ends_.begin(), ends_.end());
  return out;
}

}  // namespace olab
