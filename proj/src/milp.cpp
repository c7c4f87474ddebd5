#include "upms/milp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace upms {

namespace {

template <typename... Ids>
std::string Name(std::string_view prefix, Ids... ids) {
  std::string s(prefix);
  ((s += '_', s += std::to_string(ids)), ...);
  return s;
}

struct Slot {
  int machine;
  int position;
  int period;
};

class Builder {
 public:
  Builder(const Instance& in, Mode mode)
      : in_(in),
        mode_(mode),
        n_(in.job_count()),
        m_(in.machine_count()),
        T_(in.period_count()),
        K_(in.personnel_count()),
        P_(in.position_count()) {
    for (int l = 1; l <= m_; ++l) {
      for (int r = 1; r <= in.machine(l).positions_per_period; ++r) {
        for (int t = 1; t <= T_; ++t) slots_.push_back({l, in.position_id(l, r), t});
      }
    }
  }

  ModelIR Build() {
    Variables();
    JobConstraints();
    PersonnelConstraints();
    ConnectivityConstraints();
    Objective();
    return std::move(model_);
  }

 private:
  double Avb(int t) const { return static_cast<double>(in_.avb(t)); }
  std::vector<int> Positions(int l) const {
    std::vector<int> out;
    for (int r = 1; r <= in_.machine(l).positions_per_period; ++r) {
      out.push_back(in_.position_id(l, r));
    }
    return out;
  }

  int V(const std::string& name) const { return model_.at(name); }
  int AJ(int i, int l, int p, int t) const { return V(Name("AJ", i, l, p, t)); }
  int SJ(int i, int j, int l, int p, int t) const {
    return V(Name("SJ", i, j, l, p, t));
  }
  int BJ(int i, int l, int p, int t) const { return V(Name("BJ", i, l, p, t)); }
  int EJ(int i, int h, int l, int p, int t) const {
    return V(Name("EJend", i, h, l, p, t));
  }
  int STJ(int i, int l, int p, int t) const { return V(Name("STJ", i, l, p, t)); }
  int ENJ(int i, int l, int p, int t) const { return V(Name("ENJ", i, l, p, t)); }
  std::optional<int> AX(int h, int l, int v) const {
    return model_.find(Name("AX", h, l, v));
  }
  int AP(int k, int p, int t) const { return V(Name("AP", k, p, t)); }
  int SP(int k, int p, int u, int t) const { return V(Name("SP", k, p, u, t)); }
  int BP(int k, int p, int t) const { return V(Name("BP", k, p, t)); }
  int EP(int k, int p, int t) const { return V(Name("EP", k, p, t)); }
  int STP(int k, int p, int t) const { return V(Name("STP", k, p, t)); }
  int ENP(int k, int p, int t) const { return V(Name("ENP", k, p, t)); }

  double Setup(int i, int h, int l) const {
    return static_cast<double>(in_.changeover(i, h, l));
  }

  void Variables() {
    auto bin = [this](const std::string& name) {
      model_.add_variable(name, VarKind::kBinary, 0.0, 1.0);
    };
    auto cont = [this](const std::string& name, double ub) {
      model_.add_variable(name, VarKind::kContinuous, 0.0, ub);
    };
    for (int i = 1; i <= n_; ++i) {
      for (const Slot& s : slots_) bin(Name("AJ", i, s.machine, s.position, s.period));
    }
    for (int i = 1; i <= n_; ++i) {
      for (int j = 1; j <= n_; ++j) {
        if (i == j) continue;
        for (const Slot& s : slots_) {
          bin(Name("SJ", i, j, s.machine, s.position, s.period));
        }
      }
    }
    for (int i = 1; i <= n_; ++i) {
      for (const Slot& s : slots_) bin(Name("BJ", i, s.machine, s.position, s.period));
    }
    for (int i = 1; i <= n_; ++i) {
      for (int h = 0; h <= n_; ++h) {
        if (h == i) continue;
        for (const Slot& s : slots_) {
          bin(Name("EJend", i, h, s.machine, s.position, s.period));
        }
      }
    }
    for (int i = 1; i <= n_; ++i) {
      for (const Slot& s : slots_) {
        cont(Name("STJ", i, s.machine, s.position, s.period), Avb(s.period));
      }
    }
    for (int i = 1; i <= n_; ++i) {
      for (const Slot& s : slots_) {
        cont(Name("ENJ", i, s.machine, s.position, s.period), Avb(s.period));
      }
    }
    // AX_h_l_v for v in the dummy period 0 .. |T| - 1. A machine cannot
    // carry the dummy job into the horizon, so AX_0_l_0 is not declared.
    if (T_ >= 2) {
      for (int h = 0; h <= n_; ++h) {
        for (int l = 1; l <= m_; ++l) {
          for (int v = 0; v < T_; ++v) {
            if (h == 0 && v == 0) continue;
            bin(Name("AX", h, l, v));
          }
        }
      }
    }
    for (int k = 1; k <= K_; ++k)
      for (int p = 1; p <= P_; ++p)
        for (int t = 1; t <= T_; ++t) bin(Name("AP", k, p, t));
    for (int k = 1; k <= K_; ++k)
      for (int p = 1; p <= P_; ++p)
        for (int u = 1; u <= P_; ++u)
          if (u != p)
            for (int t = 1; t <= T_; ++t) bin(Name("SP", k, p, u, t));
    for (int k = 1; k <= K_; ++k)
      for (int p = 1; p <= P_; ++p)
        for (int t = 1; t <= T_; ++t) bin(Name("BP", k, p, t));
    for (int k = 1; k <= K_; ++k)
      for (int p = 1; p <= P_; ++p)
        for (int t = 1; t <= T_; ++t) bin(Name("EP", k, p, t));
    for (int k = 1; k <= K_; ++k)
      for (int p = 1; p <= P_; ++p)
        for (int t = 1; t <= T_; ++t) cont(Name("STP", k, p, t), Avb(t));
    for (int k = 1; k <= K_; ++k)
      for (int p = 1; p <= P_; ++p)
        for (int t = 1; t <= T_; ++t) cont(Name("ENP", k, p, t), Avb(t));
  }

  void JobConstraints() {
    for (int i = 1; i <= n_; ++i) {
      LinearExpr e;
      for (const Slot& s : slots_) e.add(AJ(i, s.machine, s.position, s.period), 1);
      model_.add_constraint(Name("alloc", i), e,
                            mode_ == Mode::kStep2 ? Sense::kEq : Sense::kLe, 1);
    }
    for (int l = 1; l <= m_; ++l) {
      LinearExpr e;
      for (int i = 1; i <= n_; ++i) {
        if (in_.eligible(i, l)) continue;
        for (const Slot& s : slots_) {
          if (s.machine == l) e.add(AJ(i, l, s.position, s.period), 1);
        }
      }
      model_.add_constraint(Name("elig", l), e, Sense::kEq, 0);
    }
    for (int i = 1; i <= n_; ++i) {
      for (const Slot& s : slots_) {
        const auto [l, p, t] = s;
        LinearExpr e;
        e.add(ENJ(i, l, p, t), 1);
        e.add(STJ(i, l, p, t), -1);
        e.add(AJ(i, l, p, t), -static_cast<double>(in_.processing_or_zero(i, l)));
        model_.add_constraint(Name("dur", i, l, p, t), e, Sense::kGe, 0);
      }
    }
    for (int i = 1; i <= n_; ++i) {
      for (const Slot& s : slots_) {
        const auto [l, p, t] = s;
        LinearExpr e;
        e.add(ENJ(i, l, p, t), 1);
        e.add(AJ(i, l, p, t), -Avb(t));
        model_.add_constraint(Name("horizon", i, l, p, t), e, Sense::kLe, 0);
      }
    }
    for (int i = 1; i <= n_; ++i) {
      for (int j = 1; j <= n_; ++j) {
        if (i == j) continue;
        for (const Slot& s : slots_) {
          const auto [l, p, t] = s;
          LinearExpr e;
          e.add(STJ(j, l, p, t), 1);
          e.add(ENJ(i, l, p, t), -1);
          e.add(SJ(i, j, l, p, t), -(Avb(t) + Setup(i, j, l)));
          e.add(AJ(i, l, p, t), Avb(t));
          model_.add_constraint(Name("seqgap", i, j, l, p, t), e, Sense::kGe, 0);
        }
      }
    }
    for (const Slot& s : slots_) {
      const auto [l, p, t] = s;
      LinearExpr e;
      for (int i = 1; i <= n_; ++i) e.add(BJ(i, l, p, t), 1);
      model_.add_constraint(Name("onebeg", l, p, t), e, Sense::kLe, 1);
    }
    for (const Slot& s : slots_) {
      const auto [l, p, t] = s;
      LinearExpr e;
      for (int i = 1; i <= n_; ++i)
        for (int h = 0; h <= n_; ++h)
          if (h != i) e.add(EJ(i, h, l, p, t), 1);
      model_.add_constraint(Name("oneend", l, p, t), e, Sense::kLe, 1);
    }
    for (int i = 1; i <= n_; ++i) {
      for (const Slot& s : slots_) {
        const auto [l, p, t] = s;
        LinearExpr e;
        e.add(BJ(i, l, p, t), 1);
        for (int j = 1; j <= n_; ++j)
          if (j != i) e.add(SJ(j, i, l, p, t), 1);
        e.add(AJ(i, l, p, t), -1);
        model_.add_constraint(Name("pred", i, l, p, t), e, Sense::kEq, 0);
      }
    }
    for (int i = 1; i <= n_; ++i) {
      for (const Slot& s : slots_) {
        const auto [l, p, t] = s;
        LinearExpr e;
        for (int h = 0; h <= n_; ++h)
          if (h != i) e.add(EJ(i, h, l, p, t), 1);
        for (int j = 1; j <= n_; ++j)
          if (j != i) e.add(SJ(i, j, l, p, t), 1);
        e.add(AJ(i, l, p, t), -1);
        model_.add_constraint(Name("succ", i, l, p, t), e, Sense::kEq, 0);
      }
    }
    // Period bounds: RP_i * Alc <= t * Alc and t * Alc <= DP_i, per period.
    for (int i = 1; i <= n_; ++i) {
      const Job& job = in_.job(i);
      for (int t = 1; t <= T_; ++t) {
        LinearExpr e;
        for (const Slot& s : slots_) {
          if (s.period == t) {
            e.add(AJ(i, s.machine, s.position, t), job.release_period - t);
          }
        }
        model_.add_constraint(Name("relperiod", i, t), e, Sense::kLe, 0);
      }
    }
    for (int i = 1; i <= n_; ++i) {
      const Job& job = in_.job(i);
      for (int t = 1; t <= T_; ++t) {
        LinearExpr e;
        for (const Slot& s : slots_) {
          if (s.period == t) e.add(AJ(i, s.machine, s.position, t), t);
        }
        model_.add_constraint(Name("delperiod", i, t), e, Sense::kLe,
                              job.delivery_period);
      }
    }
    for (int i = 1; i <= n_; ++i) {
      const Job& job = in_.job(i);
      LinearExpr e;
      for (const Slot& s : slots_) {
        if (s.period == job.release_period) {
          e.add(AJ(i, s.machine, s.position, s.period),
                static_cast<double>(job.release_time));
        }
      }
      for (const Slot& s : slots_) e.add(STJ(i, s.machine, s.position, s.period), -1);
      model_.add_constraint(Name("reltime", i), e, Sense::kLe, 0);
    }
    // EN of the allocated copy never exceeds DT_it of its period.
    for (int i = 1; i <= n_; ++i) {
      LinearExpr e;
      for (const Slot& s : slots_) e.add(ENJ(i, s.machine, s.position, s.period), 1);
      for (const Slot& s : slots_) {
        e.add(AJ(i, s.machine, s.position, s.period),
              -static_cast<double>(in_.delivery_bound(i, s.period)));
      }
      model_.add_constraint(Name("deltime", i), e, Sense::kLe, 0);
    }
  }

  void PersonnelConstraints() {
    for (const Slot& s : slots_) {
      const auto [l, p, t] = s;
      LinearExpr e;
      for (int i = 1; i <= n_; ++i) e.add(BJ(i, l, p, t), 1);
      for (int k = 1; k <= K_; ++k) e.add(AP(k, p, t), -1);
      model_.add_constraint(Name("perspresent", l, p, t), e, Sense::kEq, 0);
    }
    for (int p = 1; p <= P_; ++p) {
      for (int t = 1; t <= T_; ++t) {
        LinearExpr e;
        for (int k = 1; k <= K_; ++k) e.add(AP(k, p, t), 1);
        model_.add_constraint(Name("persone", p, t), e, Sense::kLe, 1);
      }
    }
    for (int l = 1; l <= m_; ++l) {
      const std::vector<int> pos = Positions(l);
      for (std::size_t r = 0; r + 1 < pos.size(); ++r) {
        for (int t = 1; t <= T_; ++t) {
          LinearExpr e;
          for (int k = 1; k <= K_; ++k) {
            e.add(AP(k, pos[r + 1], t), 1);
            e.add(AP(k, pos[r], t), -1);
          }
          model_.add_constraint(Name("posorder", l, pos[r], t), e, Sense::kLe, 0);
        }
      }
    }
    for (const Slot& s : slots_) {
      const auto [l, p, t] = s;
      LinearExpr e;
      for (int k = 1; k <= K_; ++k) {
        e.add(ENP(k, p, t), 1);
        e.add(STP(k, p, t), -1);
      }
      for (int i = 1; i <= n_; ++i) {
        e.add(AJ(i, l, p, t), -static_cast<double>(in_.processing_or_zero(i, l)));
        for (int j = 1; j <= n_; ++j)
          if (j != i) e.add(SJ(i, j, l, p, t), -Setup(i, j, l));
        e.add(BJ(i, l, p, t), -static_cast<double>(in_.initial_setup(i, l)));
        for (int h = 0; h <= n_; ++h)
          if (h != i) e.add(EJ(i, h, l, p, t), -Setup(i, h, l));
      }
      model_.add_constraint(Name("persdur", l, p, t), e, Sense::kGe, 0);
    }
    for (int k = 1; k <= K_; ++k) {
      for (int p = 1; p <= P_; ++p) {
        for (int t = 1; t <= T_; ++t) {
          LinearExpr e;
          e.add(ENP(k, p, t), 1);
          e.add(AP(k, p, t), -Avb(t));
          model_.add_constraint(Name("persend", k, p, t), e, Sense::kLe, 0);
        }
      }
    }
    // Start times of unallocated personnel are pinned to zero as well, so
    // the personnel sums in the covering constraints only see the attendant.
    for (int k = 1; k <= K_; ++k) {
      for (int p = 1; p <= P_; ++p) {
        for (int t = 1; t <= T_; ++t) {
          LinearExpr e;
          e.add(STP(k, p, t), 1);
          e.add(AP(k, p, t), -Avb(t));
          model_.add_constraint(Name("persstart", k, p, t), e, Sense::kLe, 0);
        }
      }
    }
    for (int i = 1; i <= n_; ++i) {
      for (const Slot& s : slots_) {
        const auto [l, p, t] = s;
        LinearExpr e;
        e.add(STJ(i, l, p, t), 1);
        for (int k = 1; k <= K_; ++k) e.add(STP(k, p, t), -1);
        e.add(BJ(i, l, p, t), -static_cast<double>(in_.initial_setup(i, l)));
        e.add(AJ(i, l, p, t), -Avb(t));
        model_.add_constraint(Name("coverstart", i, l, p, t), e, Sense::kGe, -Avb(t));
      }
    }
    for (int i = 1; i <= n_; ++i) {
      for (const Slot& s : slots_) {
        const auto [l, p, t] = s;
        LinearExpr e;
        e.add(ENJ(i, l, p, t), 1);
        for (int h = 0; h <= n_; ++h)
          if (h != i) e.add(EJ(i, h, l, p, t), Setup(i, h, l));
        for (int k = 1; k <= K_; ++k) e.add(ENP(k, p, t), -1);
        model_.add_constraint(Name("coverend", i, l, p, t), e, Sense::kLe, 0);
      }
    }
    for (int k = 1; k <= K_; ++k) {
      for (int p = 1; p <= P_; ++p) {
        for (int u = 1; u <= P_; ++u) {
          if (u == p) continue;
          for (int t = 1; t <= T_; ++t) {
            LinearExpr e;
            e.add(STP(k, u, t), 1);
            e.add(ENP(k, p, t), -1);
            e.add(SP(k, p, u, t), -Avb(t));
            e.add(AP(k, p, t), Avb(t));
            model_.add_constraint(Name("routegap", k, p, u, t), e, Sense::kGe, 0);
          }
        }
      }
    }
    for (int l = 1; l <= m_; ++l) {
      const std::vector<int> pos = Positions(l);
      for (std::size_t r = 0; r + 1 < pos.size(); ++r) {
        for (int t = 1; t <= T_; ++t) {
          LinearExpr e;
          for (int k = 1; k <= K_; ++k) {
            e.add(STP(k, pos[r + 1], t), 1);
            e.add(ENP(k, pos[r], t), -1);
            e.add(AP(k, pos[r + 1], t), -Avb(t));
            e.add(AP(k, pos[r], t), Avb(t));
          }
          model_.add_constraint(Name("rankgap", l, pos[r], t), e, Sense::kGe, 0);
        }
      }
    }
    for (int k = 1; k <= K_; ++k) {
      for (int t = 1; t <= T_; ++t) {
        LinearExpr e;
        for (int p = 1; p <= P_; ++p) e.add(BP(k, p, t), 1);
        model_.add_constraint(Name("routebeg", k, t), e, Sense::kLe, 1);
      }
    }
    for (int k = 1; k <= K_; ++k) {
      for (int t = 1; t <= T_; ++t) {
        LinearExpr e;
        for (int p = 1; p <= P_; ++p) e.add(EP(k, p, t), 1);
        model_.add_constraint(Name("routeend", k, t), e, Sense::kLe, 1);
      }
    }
    for (int k = 1; k <= K_; ++k) {
      for (int p = 1; p <= P_; ++p) {
        for (int t = 1; t <= T_; ++t) {
          LinearExpr e;
          e.add(BP(k, p, t), 1);
          for (int u = 1; u <= P_; ++u)
            if (u != p) e.add(SP(k, u, p, t), 1);
          e.add(AP(k, p, t), -1);
          model_.add_constraint(Name("routepred", k, p, t), e, Sense::kEq, 0);
        }
      }
    }
    for (int k = 1; k <= K_; ++k) {
      for (int p = 1; p <= P_; ++p) {
        for (int t = 1; t <= T_; ++t) {
          LinearExpr e;
          e.add(EP(k, p, t), 1);
          for (int u = 1; u <= P_; ++u)
            if (u != p) e.add(SP(k, p, u, t), 1);
          e.add(AP(k, p, t), -1);
          model_.add_constraint(Name("routesucc", k, p, t), e, Sense::kEq, 0);
        }
      }
    }
    for (int k = 1; k <= K_; ++k) {
      for (int p = 1; p <= P_; ++p) {
        for (int t = 1; t <= T_; ++t) {
          LinearExpr e;
          e.add(AP(k, p, t), static_cast<double>(in_.window(k, t).start));
          e.add(STP(k, p, t), -1);
          model_.add_constraint(Name("winstart", k, p, t), e, Sense::kLe, 0);
        }
      }
    }
    for (int k = 1; k <= K_; ++k) {
      for (int p = 1; p <= P_; ++p) {
        for (int t = 1; t <= T_; ++t) {
          LinearExpr e;
          e.add(ENP(k, p, t), 1);
          model_.add_constraint(Name("winend", k, p, t), e, Sense::kLe,
                                static_cast<double>(in_.window(k, t).end));
        }
      }
    }
  }

  void ConnectivityConstraints() {
    for (int h = 0; h <= n_; ++h) {
      for (int l = 1; l <= m_; ++l) {
        const std::vector<int> pos = Positions(l);
        for (std::size_t r = 0; r + 1 < pos.size(); ++r) {
          for (int t = 1; t <= T_; ++t) {
            LinearExpr e;
            if (h != 0) e.add(BJ(h, l, pos[r + 1], t), 1);
            for (int i = 1; i <= n_; ++i)
              if (i != h) e.add(EJ(i, h, l, pos[r], t), -1);
            for (int k = 1; k <= K_; ++k) {
              e.add(AP(k, pos[r + 1], t), -1);
              e.add(AP(k, pos[r], t), 1);
            }
            model_.add_constraint(Name("connpos", h, l, pos[r], t), e, Sense::kGe, 0);
          }
        }
      }
    }
    // Period balance for t < |T|; the closing balance at t = |T| (real jobs
    // only) makes the machine's final run point to the dummy job.
    for (int h = 0; h <= n_; ++h) {
      for (int l = 1; l <= m_; ++l) {
        const std::vector<int> pos = Positions(l);
        for (int t = 1; t <= T_; ++t) {
          if (t == T_ && h == 0) continue;
          LinearExpr e;
          for (int i = 1; i <= n_; ++i) {
            if (i == h) continue;
            for (int p : pos) e.add(EJ(i, h, l, p, t), 1);
          }
          if (h != 0) {
            for (std::size_t r = 1; r < pos.size(); ++r) e.add(BJ(h, l, pos[r], t), -1);
          }
          if (auto a = AX(h, l, t - 1)) e.add(*a, 1);
          if (t < T_) {
            if (h != 0) e.add(BJ(h, l, pos[0], t + 1), -1);
            if (auto a = AX(h, l, t)) e.add(*a, -1);
          }
          model_.add_constraint(Name("connper", h, l, t), e, Sense::kEq, 0);
        }
      }
    }
    // At most one pending job may enter the horizon per machine.
    if (T_ >= 2) {
      for (int l = 1; l <= m_; ++l) {
        LinearExpr e;
        for (int h = 1; h <= n_; ++h) e.add(*AX(h, l, 0), 1);
        for (int i = 1; i <= n_; ++i) e.add(BJ(i, l, in_.first_position(l), 1), 1);
        model_.add_constraint(Name("connanchor", l), e, Sense::kLe, 1);
      }
    }
  }

  void Objective() {
    LinearExpr e;
    if (mode_ == Mode::kStep1) {
      for (int i = 1; i <= n_; ++i)
        for (const Slot& s : slots_) e.add(AJ(i, s.machine, s.position, s.period), 1);
      model_.set_objective(true, e);
      return;
    }
    for (int i = 1; i <= n_; ++i) {
      for (const Slot& s : slots_) {
        const auto [l, p, t] = s;
        e.add(AJ(i, l, p, t), static_cast<double>(in_.processing_or_zero(i, l)));
        for (int j = 1; j <= n_; ++j)
          if (j != i) e.add(SJ(i, j, l, p, t), Setup(i, j, l));
        e.add(BJ(i, l, p, t), static_cast<double>(in_.initial_setup(i, l)));
        for (int h = 0; h <= n_; ++h)
          if (h != i) e.add(EJ(i, h, l, p, t), Setup(i, h, l));
      }
    }
    model_.set_objective(false, e);
  }

  const Instance& in_;
  Mode mode_;
  int n_, m_, T_, K_, P_;
  std::vector<Slot> slots_;
  ModelIR model_;
};

}  // namespace

ModelIR build_model(const Instance& instance, Mode mode) {
  require_valid_instance(instance);
  return Builder(instance, mode).Build();
}

ModelIR build_step2_model(const Instance& instance) {
  return build_model(instance, Mode::kStep2);
}

ModelIR build_step1_model(const Instance& instance) {
  return build_model(instance, Mode::kStep1);
}

Code constraint_code(std::string_view name) {
  static const std::map<std::string_view, Code> kPrefixes = {
      {"alloc", Code::kAlloc},          {"elig", Code::kElig},
      {"dur", Code::kDur},              {"horizon", Code::kHorizon},
      {"seqgap", Code::kSeqGap},        {"onebeg", Code::kOneBeg},
      {"oneend", Code::kOneEnd},        {"pred", Code::kChain},
      {"succ", Code::kChain},           {"relperiod", Code::kRelease},
      {"reltime", Code::kRelease},      {"delperiod", Code::kDelivery},
      {"deltime", Code::kDelivery},     {"perspresent", Code::kPersPresent},
      {"persone", Code::kPersOne},      {"posorder", Code::kPosOrder},
      {"persdur", Code::kPersDur},      {"persend", Code::kPersDur},
      {"persstart", Code::kPersDur},    {"coverstart", Code::kPersCover},
      {"coverend", Code::kPersCover},   {"routegap", Code::kPersNoOverlap},
      {"rankgap", Code::kPersNoOverlap}, {"routebeg", Code::kPersChain},
      {"routeend", Code::kPersChain},   {"routepred", Code::kPersChain},
      {"routesucc", Code::kPersChain},  {"winstart", Code::kPersWindow},
      {"winend", Code::kPersWindow},    {"connpos", Code::kConnectPos},
      {"connper", Code::kConnectPeriod}, {"connanchor", Code::kConnectPeriod},
  };
  const std::string_view prefix = name.substr(0, name.find('_'));
  auto it = kPrefixes.find(prefix);
  if (it == kPrefixes.end()) {
    throw std::invalid_argument("unknown constraint family " + std::string(name));
  }
  return it->second;
}

}  // namespace upms
