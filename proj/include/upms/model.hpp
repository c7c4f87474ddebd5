#pragma once

// Solver-agnostic mixed-integer linear model.

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace upms {

enum class VarKind { kBinary, kContinuous };
enum class Sense { kLe, kEq, kGe };

struct Variable {
  std::string name;
  VarKind kind = VarKind::kContinuous;
  double lower = 0.0;
  double upper = 0.0;

  bool operator==(const Variable&) const = default;
};

struct Term {
  int var = 0;
  double coef = 0.0;

  bool operator==(const Term&) const = default;
};

struct Constraint {
  std::string name;
  std::vector<Term> terms;
  Sense sense = Sense::kLe;
  double rhs = 0.0;

  bool operator==(const Constraint&) const = default;
};

struct Objective {
  bool maximize = false;
  std::vector<Term> terms;

  bool operator==(const Objective&) const = default;
};

/// Variable name -> value; absent variables are zero.
using Assignment = std::map<std::string, double>;

/// Accumulates terms, merging repeated variables and dropping zeros.
class LinearExpr {
 public:
  void add(int var, double coef);
  std::vector<Term> terms() const;
  bool empty() const { return terms().empty(); }

 private:
  std::vector<Term> terms_;
};

class ModelIR {
 public:
  /// Returns the new variable's index; throws on duplicate names.
  int add_variable(std::string name, VarKind kind, double lower, double upper);
  /// Adds the constraint unless it has no terms; returns whether added.
  bool add_constraint(std::string name, const LinearExpr& expr, Sense sense,
                      double rhs);
  void set_objective(bool maximize, const LinearExpr& expr);

  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const Objective& objective() const { return objective_; }

  std::optional<int> find(const std::string& name) const;
  int at(const std::string& name) const;

  Assignment warm_start;

  /// Structural and term-wise equality (warm start excluded).
  bool same_terms(const ModelIR& other) const;

  std::vector<double> dense(const Assignment& assignment) const;
  double objective_value(const Assignment& assignment) const;

 private:
  std::vector<Variable> variables_;
  std::vector<Constraint> constraints_;
  Objective objective_;
  std::unordered_map<std::string, int> index_;
};

struct ModelCheck {
  std::vector<std::string> violated_constraints;
  std::vector<std::string> violated_bounds;

  bool ok() const {
    return violated_constraints.empty() && violated_bounds.empty();
  }
};

/// Evaluates every bound, integrality requirement and constraint.
ModelCheck check_assignment(const ModelIR& model, const Assignment& assignment,
                            double tolerance = 1e-6);

}  // namespace upms
