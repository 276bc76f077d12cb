#pragma once

#include <functional>
#include <vector>

namespace olab {

struct Atom {
  double value;
  double weight;
};

// Right-continuous nonincreasing step function on [0, inf): value v_j on [m_{j-1}, m_j) with
// m_0 = 0, then `tail` on [m_n, inf). Consecutive equal values are merged.
class StepFunction {
 public:
  StepFunction() = default;
  // Decreasing rearrangement of the atoms; `tail` must not exceed the smallest value.
  static StepFunction from_atoms(std::vector<Atom> atoms, double tail = 0.0);

  double operator()(double t) const;
  // |{t : f(t) > s}|, infinite when tail > s.
  double distribution(double s) const;
  // int_0^inf g(f(t)) dt, exact; infinite tail contributes inf unless g(tail) = 0.
  double integral(const std::function<double(double)>& g) const;
  double integral() const;
  // int_0^t f.
  double integral_to(double t) const;
  // Composes an increasing map with the values.
  StepFunction map(const std::function<double(double)>& f) const;

  const std::vector<double>& values() const { return values_; }
  // Right ends m_1 < ... < m_n.
  const std::vector<double>& ends() const { return ends_; }
  // 0, m_1, ..., m_n.
  std::vector<double> left_endpoints() const;
  double support() const { return ends_.empty() ? 0.0 : ends_.back(); }
  double tail() const { return tail_; }

 private:
  std::vector<double> values_;
  std::vector<double> ends_;
  double tail_ = 0.0;
};

}  // namespace olab
