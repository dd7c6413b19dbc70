#include "liepke/cryptanalysis.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>
#include <string>
#include <unordered_map>

#include "liepke/error.hpp"
#include "liepke/sampler.hpp"

namespace liepke {

namespace {

std::string describe(const Integer& v) {
  if (v > 0 && mpz_popcount(v.get_mpz_t()) == 1) return "2^" + std::to_string(bit_length(v) - 1);
  return v.get_str();
}

std::uint64_t to_u64(const Integer& v) { return mpz_get_ui(v.get_mpz_t()); }

std::string table_key(const FieldMatrix& m) {
  std::vector<std::uint8_t> enc = canonical_encoding(m);
  return std::string(enc.begin(), enc.end());
}

NafSolution make_solution(const NafInstance& inst, std::uint64_t x, std::uint64_t y) {
  return {Integer(static_cast<unsigned long>(x)), Integer(static_cast<unsigned long>(y)),
          exp_scaled(Integer(static_cast<unsigned long>(x)), inst.S),
          exp_scaled(Integer(static_cast<unsigned long>(y)), inst.T)};
}

}  // namespace

void validate(const NafInstance& inst) {
  if (inst.bound_x < 1 || inst.bound_y < 1) throw ParameterError("search bounds must be at least 1");
  require_compatible(inst.S.matrix(), inst.T.matrix());
  require_compatible(inst.S.matrix(), inst.target.matrix());
  if (commutes(inst.S.matrix(), inst.T.matrix())) throw ParameterError("S and T commute");
}

NafInstance plant_naf(const NilpotentMatrix& S, const NilpotentMatrix& T, const Integer& x,
                      const Integer& y, const Integer& bound_x, const Integer& bound_y) {
  return {S, T, exp_scaled(x, S) * exp_scaled(y, T), bound_x, bound_y};
}

SolveReport naf_bruteforce(const NafInstance& inst, const SolverBudget& budget) {
  validate(inst);
  const Integer pairs = inst.bound_x * inst.bound_y;
  if (pairs > budget.max_pairs) {
    throw BudgetRefused("bruteforce refused: bound_x * bound_y = " + describe(inst.bound_x) + " * " +
                        describe(inst.bound_y) + " = " + describe(pairs) + " pairs exceeds budget " +
                        describe(budget.max_pairs));
  }
  const std::uint64_t bx = to_u64(inst.bound_x);
  const std::uint64_t by = to_u64(inst.bound_y);
  const std::size_t n = inst.S.dim();
  const ModulusPtr& mod = inst.S.matrix().modulus_ptr();
  const GroupElement step_s = mat_exp(inst.S);
  const GroupElement step_t = mat_exp(inst.T);

  SolveReport report;
  GroupElement ex = GroupElement::identity(n, mod);
  for (std::uint64_t x = 0; x < bx; ++x) {
    GroupElement ey = GroupElement::identity(n, mod);
    for (std::uint64_t y = 0; y < by; ++y) {
      ++report.ops;
      if (ex * ey == inst.target) {
        report.solution = make_solution(inst, x, y);
        return report;
      }
      ey = ey * step_t;
    }
    ex = ex * step_s;
  }
  return report;
}

SolveReport naf_mitm(const NafInstance& inst, const SolverBudget& budget) {
  validate(inst);
  if (inst.bound_y > budget.max_table) {
    throw BudgetRefused("mitm refused: table of bound_y = " + describe(inst.bound_y) +
                        " entries exceeds budget " + describe(budget.max_table));
  }
  const Integer work = inst.bound_x + inst.bound_y;
  if (work > budget.max_pairs) {
    throw BudgetRefused("mitm refused: bound_x + bound_y = " + describe(work) +
                        " group operations exceeds budget " + describe(budget.max_pairs));
  }
  const std::uint64_t bx = to_u64(inst.bound_x);
  const std::uint64_t by = to_u64(inst.bound_y);
  const std::size_t n = inst.S.dim();
  const ModulusPtr& mod = inst.S.matrix().modulus_ptr();

  SolveReport report;
  // Key -> smallest y with that image.
  std::unordered_map<std::string, std::uint64_t> table;
  table.reserve(static_cast<std::size_t>(by));
  const GroupElement step_t = mat_exp(inst.T);
  GroupElement ey = GroupElement::identity(n, mod);
  for (std::uint64_t y = 0; y < by; ++y) {
    ++report.ops;
    table.emplace(table_key(ey.matrix()), y);
    ey = ey * step_t;
  }

  // exp(-xS) * A, walking x upward.
  const GroupElement back_step = mat_exp(inst.S.negated());
  GroupElement candidate = inst.target;
  for (std::uint64_t x = 0; x < bx; ++x) {
    ++report.ops;
    auto hit = table.find(table_key(candidate.matrix()));
    if (hit != table.end()) {
      report.solution = make_solution(inst, x, hit->second);
      return report;
    }
    candidate = back_step * candidate;
  }
  return report;
}

std::optional<GroupElement> nai_via_naf(const NaiInstance& inst, const NafSolver& solver) {
  SolveReport first = solver(NafInstance{inst.S, inst.T, inst.delta1, inst.bound_x, inst.bound_y});
  if (!first.solution) return std::nullopt;
  SolveReport second = solver(NafInstance{inst.S, inst.T, inst.delta2, inst.bound_x, inst.bound_y});
  if (!second.solution) return std::nullopt;
  return exp_scaled(first.solution->x + second.solution->x, inst.S) *
         exp_scaled(first.solution->y + second.solution->y, inst.T);
}

std::string_view solver_name(SolverKind kind) {
  return kind == SolverKind::bruteforce ? "brute" : "mitm";
}

std::vector<SweepRow> hardness_sweep(std::size_t n, const std::vector<std::size_t>& p_bits_list,
                                     const std::vector<std::size_t>& bound_bits_list,
                                     RngHandle& rng, const SweepOptions& options) {
  if (options.trials == 0) throw ParameterError("sweep needs at least one trial");
  std::vector<std::pair<std::uint64_t, std::uint64_t>> uniforms(options.trials);
  for (auto& [ux, uy] : uniforms) {
    ux = rng.next_u64();
    uy = rng.next_u64();
  }
  auto scale = [](std::uint64_t u, std::size_t bits) -> std::uint64_t {
    return bits == 0 ? 0 : u >> (64 - bits);
  };

  std::vector<SweepRow> rows;
  for (std::size_t p_bits : p_bits_list) {
    Integer p;
    do {
      p = sample_prime(p_bits, rng);
    } while (p <= n);
    const ModulusPtr mod = Modulus::make(p);
    const auto [S, T] = sample_noncommuting_pair(n, mod, rng);

    for (std::size_t bound_bits : bound_bits_list) {
      const std::size_t x_bits = (bound_bits + 1) / 2;
      const std::size_t y_bits = bound_bits / 2;
      const Integer bound_x = Integer(1) << x_bits;
      const Integer bound_y = Integer(1) << y_bits;

      for (SolverKind kind : options.solvers) {
        SweepRow row{n, p_bits, bound_bits, kind, 0, 0.0, false, true};
        std::vector<std::uint64_t> ops;
        const auto start = std::chrono::steady_clock::now();
        try {
          for (const auto& [ux, uy] : uniforms) {
            const Integer x(static_cast<unsigned long>(scale(ux, x_bits)));
            const Integer y(static_cast<unsigned long>(scale(uy, y_bits)));
            NafInstance inst = plant_naf(S, T, x, y, bound_x, bound_y);
            SolveReport rep = kind == SolverKind::bruteforce ? naf_bruteforce(inst, options.budget)
                                                             : naf_mitm(inst, options.budget);
            ops.push_back(rep.ops);
            row.found = row.found && rep.solution && rep.solution->exp_x == exp_scaled(x, S) &&
                        rep.solution->exp_y == exp_scaled(y, T);
          }
        } catch (const BudgetRefused&) {
          row.refused = true;
          row.found = false;
        }
        row.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                         .count();
        if (!row.refused) {
          auto mid = ops.begin() + static_cast<std::ptrdiff_t>(ops.size() / 2);
          std::nth_element(ops.begin(), mid, ops.end());
          row.ops = *mid;
        }
        rows.push_back(row);
      }
    }
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << kSweepCsvHeader << '\n';
  for (const SweepRow& r : rows) {
    out << r.n << ',' << r.p_bits << ',' << r.bound_bits << ',' << solver_name(r.solver) << ','
        << r.ops << ',';
    char millis[32];
    std::snprintf(millis, sizeof millis, "%.3f", r.millis);
    out << millis << ',' << (r.refused ? "refused" : (r.found ? "true" : "false")) << '\n';
  }
  return out.str();
}

}  // namespace liepke
