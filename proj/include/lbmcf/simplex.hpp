#pragma once

// Two-phase primal simplex over exact rationals with Bland's rule.
//
// Meant for desk-sized models: the tableau is dense, but a pivot only touches
// the rows with a nonzero in the entering column and, within them, the columns
// where the pivot row is nonzero.

#include <cstdint>
#include <vector>

#include "lbmcf/lp_model.hpp"
#include "lbmcf/rational.hpp"

namespace lbmcf {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

inline const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
  }
  return "?";
}

struct ExactLpSolution {
  LpStatus status = LpStatus::kOptimal;
  Rational objective;
  std::vector<Rational> values;  // one per model variable
  std::int64_t pivots = 0;
};

class ExactSimplex {
 public:
  explicit ExactSimplex(const LpModel& model) : structural_(model.variable_count()) {
    const std::size_t rows = model.row_count();
    std::size_t slacks = 0, artificials = 0;
    for (const LpRow& row : model.rows) {
      const bool flip = row.rhs < 0.0;
      const RowSense sense = flip ? mirrored(row.sense) : row.sense;
      if (sense != RowSense::kEqual) ++slacks;
      if (sense != RowSense::kLessEqual) ++artificials;
    }
    first_artificial_ = structural_ + slacks;
    columns_ = first_artificial_ + artificials;
    rhs_ = columns_;

    tableau_.assign(rows, std::vector<Rational>(columns_ + 1));
    basis_.assign(rows, 0);
    std::size_t next_slack = structural_, next_artificial = first_artificial_;
    for (std::size_t r = 0; r < rows; ++r) {
      const LpRow& row = model.rows[r];
      const bool flip = row.rhs < 0.0;
      const RowSense sense = flip ? mirrored(row.sense) : row.sense;
      auto& t = tableau_[r];
      for (const LpTerm& term : row.terms) {
        Rational a = decimal_to_rational(term.coefficient);
        if (flip) a = -a;
        t[static_cast<std::size_t>(term.variable)] += a;
      }
      t[rhs_] = decimal_to_rational(row.rhs);
      if (flip) t[rhs_] = -t[rhs_];
      if (sense == RowSense::kLessEqual) {
        t[next_slack] = 1;
        basis_[r] = next_slack++;
      } else {
        if (sense == RowSense::kGreaterEqual) t[next_slack++] = -1;
        t[next_artificial] = 1;
        basis_[r] = next_artificial++;
      }
    }
    objective_.assign(columns_, Rational(0));
    for (std::size_t j = 0; j < structural_; ++j) objective_[j] = decimal_to_rational(model.objective[j]);
  }

  ExactLpSolution solve() {
    ExactLpSolution out;
    if (first_artificial_ < columns_) {
      std::vector<Rational> phase1(columns_, Rational(0));
      for (std::size_t j = first_artificial_; j < columns_; ++j) phase1[j] = -1;
      load_costs(phase1);
      run(columns_, out.pivots);
      if (sgn(-cost_row_[rhs_]) < 0) {
        out.status = LpStatus::kInfeasible;
        return out;
      }
      expel_artificials(out.pivots);
    }
    load_costs(objective_);
    if (!run(first_artificial_, out.pivots)) {
      out.status = LpStatus::kUnbounded;
      return out;
    }
    out.status = LpStatus::kOptimal;
    out.objective = -cost_row_[rhs_];
    out.values.assign(structural_, Rational(0));
    for (std::size_t r = 0; r < basis_.size(); ++r)
      if (basis_[r] < structural_) out.values[basis_[r]] = tableau_[r][rhs_];
    return out;
  }

 private:
  static RowSense mirrored(RowSense s) {
    if (s == RowSense::kLessEqual) return RowSense::kGreaterEqual;
    if (s == RowSense::kGreaterEqual) return RowSense::kLessEqual;
    return s;
  }

  // cost_row_[j] = c_j - c_B B^-1 A_j, cost_row_[rhs] = -c_B B^-1 b.
  void load_costs(const std::vector<Rational>& costs) {
    cost_row_.assign(columns_ + 1, Rational(0));
    for (std::size_t j = 0; j < columns_; ++j) cost_row_[j] = costs[j];
    for (std::size_t r = 0; r < basis_.size(); ++r) {
      const Rational& cb = costs[basis_[r]];
      if (sgn(cb) == 0) continue;
      const auto& t = tableau_[r];
      for (std::size_t j = 0; j <= columns_; ++j)
        if (sgn(t[j]) != 0) cost_row_[j] -= cb * t[j];
    }
  }

  // Bland's rule over columns [0, allowed). Returns false if unbounded.
  bool run(std::size_t allowed, std::int64_t& pivots) {
    while (true) {
      std::size_t entering = allowed;
      for (std::size_t j = 0; j < allowed; ++j)
        if (sgn(cost_row_[j]) > 0) {
          entering = j;
          break;
        }
      if (entering == allowed) return true;

      std::size_t leaving = basis_.size();
      Rational best_ratio;
      for (std::size_t r = 0; r < basis_.size(); ++r) {
        const Rational& a = tableau_[r][entering];
        if (sgn(a) <= 0) continue;
        Rational ratio = tableau_[r][rhs_] / a;
        if (leaving == basis_.size() || ratio < best_ratio ||
            (ratio == best_ratio && basis_[r] < basis_[leaving])) {
          leaving = r;
          best_ratio = std::move(ratio);
        }
      }
      if (leaving == basis_.size()) return false;
      pivot(leaving, entering);
      ++pivots;
    }
  }

  void pivot(std::size_t row, std::size_t column) {
    auto& p = tableau_[row];
    const Rational inverse = 1 / p[column];
    std::vector<std::size_t> nonzero;
    for (std::size_t j = 0; j <= columns_; ++j)
      if (sgn(p[j]) != 0) {
        p[j] *= inverse;
        nonzero.push_back(j);
      }
    Rational factor;
    const auto eliminate = [&](std::vector<Rational>& target) {
      if (sgn(target[column]) == 0) return;
      factor = target[column];
      for (std::size_t j : nonzero) target[j] -= factor * p[j];
    };
    for (std::size_t r = 0; r < tableau_.size(); ++r)
      if (r != row) eliminate(tableau_[r]);
    eliminate(cost_row_);
    basis_[row] = column;
  }

  // After phase 1 every artificial still in the basis sits at zero. Pivot it
  // out on any non-artificial column; if its row has none, the row is a
  // linear combination of the others and is dropped.
  void expel_artificials(std::int64_t& pivots) {
    for (std::size_t r = 0; r < basis_.size();) {
      if (basis_[r] < first_artificial_) {
        ++r;
        continue;
      }
      std::size_t column = first_artificial_;
      for (std::size_t j = 0; j < first_artificial_; ++j)
        if (sgn(tableau_[r][j]) != 0) {
          column = j;
          break;
        }
      if (column < first_artificial_) {
        pivot(r, column);
        ++pivots;
        ++r;
      } else {
        tableau_.erase(tableau_.begin() + static_cast<std::ptrdiff_t>(r));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
      }
    }
  }

  std::size_t structural_ = 0;
  std::size_t first_artificial_ = 0;
  std::size_t columns_ = 0;
  std::size_t rhs_ = 0;
  std::vector<std::vector<Rational>> tableau_;
  std::vector<std::size_t> basis_;
  std::vector<Rational> objective_;
  std::vector<Rational> cost_row_;
};

inline ExactLpSolution solve_lp_exact(const LpModel& model) { return ExactSimplex(model).solve(); }

}  // namespace lbmcf
