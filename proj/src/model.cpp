#include "upms/model.hpp"

#include <cmath>
#include <stdexcept>

namespace upms {

void LinearExpr::add(int var, double coef) {
  for (Term& t : terms_) {
    if (t.var == var) {
      t.coef += coef;
      return;
    }
  }
  terms_.push_back({var, coef});
}

std::vector<Term> LinearExpr::terms() const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const Term& t : terms_) {
    if (t.coef != 0.0) out.push_back(t);
  }
  return out;
}

int ModelIR::add_variable(std::string name, VarKind kind, double lower,
                          double upper) {
  const int id = static_cast<int>(variables_.size());
  auto [it, inserted] = index_.emplace(name, id);
  if (!inserted) throw std::invalid_argument("duplicate variable " + name);
  variables_.push_back({std::move(name), kind, lower, upper});
  return id;
}

bool ModelIR::add_constraint(std::string name, const LinearExpr& expr,
                             Sense sense, double rhs) {
  std::vector<Term> terms = expr.terms();
  if (terms.empty()) return false;
  constraints_.push_back({std::move(name), std::move(terms), sense, rhs});
  return true;
}

void ModelIR::set_objective(bool maximize, const LinearExpr& expr) {
  objective_ = {maximize, expr.terms()};
}

std::optional<int> ModelIR::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int ModelIR::at(const std::string& name) const {
  if (auto id = find(name)) return *id;
  throw std::out_of_range("unknown variable " + name);
}

bool ModelIR::same_terms(const ModelIR& other) const {
  return variables_ == other.variables_ &&
         constraints_ == other.constraints_ && objective_ == other.objective_;
}

std::vector<double> ModelIR::dense(const Assignment& assignment) const {
  std::vector<double> values(variables_.size(), 0.0);
  for (const auto& [name, value] : assignment) values[at(name)] = value;
  return values;
}

double ModelIR::objective_value(const Assignment& assignment) const {
  const std::vector<double> x = dense(assignment);
  double z = 0.0;
  for (const Term& t : objective_.terms) z += t.coef * x[t.var];
  return z;
}

ModelCheck check_assignment(const ModelIR& model, const Assignment& assignment,
                            double tolerance) {
  ModelCheck out;
  const std::vector<double> x = model.dense(assignment);
  const auto& vars = model.variables();
  for (std::size_t v = 0; v < vars.size(); ++v) {
    const Variable& var = vars[v];
    const double value = x[v];
    if (value < var.lower - tolerance || value > var.upper + tolerance ||
        (var.kind == VarKind::kBinary &&
         std::fabs(value - std::round(value)) > tolerance)) {
      out.violated_bounds.push_back(var.name);
    }
  }
  for (const Constraint& c : model.constraints()) {
    double lhs = 0.0;
    for (const Term& t : c.terms) lhs += t.coef * x[t.var];
    const bool ok = c.sense == Sense::kLe   ? lhs <= c.rhs + tolerance
                    : c.sense == Sense::kGe ? lhs >= c.rhs - tolerance
                                            : std::fabs(lhs - c.rhs) <= tolerance;
    if (!ok) out.violated_constraints.push_back(c.name);
  }
  return out;
}

}  // namespace upms
