#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "liepke/matrix.hpp"
#include "liepke/rng.hpp"

namespace liepke {

// Given A = exp(xS) * exp(yT), recover the factor pair with x in [0, bound_x)
// and y in [0, bound_y).
struct NafInstance {
  NilpotentMatrix S;
  NilpotentMatrix T;
  GroupElement target;
  Integer bound_x;
  Integer bound_y;
};

// Given exp(aS)exp(bT) and exp(cS)exp(dT), produce exp((a+c)S)exp((b+d)T).
struct NaiInstance {
  NilpotentMatrix S;
  NilpotentMatrix T;
  GroupElement delta1;
  GroupElement delta2;
  Integer bound_x;
  Integer bound_y;
};

struct NafSolution {
  Integer x;
  Integer y;
  GroupElement exp_x;  // exp(xS)
  GroupElement exp_y;  // exp(yT)
};

struct SolveReport {
  std::optional<NafSolution> solution;
  std::uint64_t ops = 0;  // bruteforce: pairs tried; mitm: table inserts + lookups
};

struct SolverBudget {
  Integer max_pairs = Integer(1) << 32;  // bruteforce search-space cap
  Integer max_table = Integer(1) << 24;  // mitm table-entry cap
};

/// Throws ParameterError on empty bounds or commuting S, T.
void validate(const NafInstance& inst);

/// Plants A = exp(xS) * exp(yT).
NafInstance plant_naf(const NilpotentMatrix& S, const NilpotentMatrix& T, const Integer& x,
                      const Integer& y, const Integer& bound_x, const Integer& bound_y);

/// Row-major scan over (x, y); the first hit (smallest x, then smallest y)
/// wins. Throws BudgetRefused when bound_x * bound_y exceeds the budget.
SolveReport naf_bruteforce(const NafInstance& inst, const SolverBudget& budget = {});

/// Tabulates exp(yT) then tests exp(-xS) * A for increasing x. Same result
/// selection as naf_bruteforce. Throws BudgetRefused when bound_y exceeds the
/// table budget or bound_x + bound_y exceeds the pair budget.
SolveReport naf_mitm(const NafInstance& inst, const SolverBudget& budget = {});

using NafSolver = std::function<SolveReport(const NafInstance&)>;

/// Factors both inputs and recombines as exp((a+c)S) * exp((b+d)T), or
/// nullopt when either factorization fails.
std::optional<GroupElement> nai_via_naf(const NaiInstance& inst, const NafSolver& solver);

enum class SolverKind { bruteforce, mitm };
std::string_view solver_name(SolverKind kind);

struct SweepOptions {
  std::size_t trials = 31;
  SolverBudget budget{};
  std::vector<SolverKind> solvers{SolverKind::bruteforce, SolverKind::mitm};
};

struct SweepRow {
  std::size_t n;
  std::size_t p_bits;
  std::size_t bound_bits;  // log2(bound_x * bound_y)
  SolverKind solver;
  std::uint64_t ops;       // median over trials; 0 when refused
  double millis;           // total wall time over trials
  bool refused;
  bool found;              // every trial recovered its planted factors
};

/// bound_bits splits as ceil(b/2) bits for x and floor(b/2) for y. Each trial
/// draws its planted exponents from 64-bit uniforms shared across cells, so
/// larger cells scale each smaller planted point rather than redraw it.
std::vector<SweepRow> hardness_sweep(std::size_t n, const std::vector<std::size_t>& p_bits_list,
                                     const std::vector<std::size_t>& bound_bits_list,
                                     RngHandle& rng, const SweepOptions& options = {});

inline constexpr std::string_view kSweepCsvHeader = "n,p_bits,bound_bits,solver,ops,millis,found";

/// Header plus one line per row; found is true, false or refused.
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace liepke
