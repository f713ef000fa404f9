#pragma once

// Enlarging an order to a maximal one: radical preimages at a prime through
// the reduced-norm valuation, left orders, and saturation to a fixpoint.

#include <optional>
#include <string>
#include <vector>

#include "cda/fixtures.hpp"
#include "cda/lattice.hpp"

namespace cda {

struct SearchStep {
  OFLattice radical;
  std::vector<AlgebraElem> new_generators;  // basis elements of the new order outside the old one
  OFLattice order_after;
  DiscriminantValue disc_after;
};

enum class Termination { Fixpoint, Budget, AlreadyMinimal };
const char* termination_name(Termination t);

struct SearchTrace {
  QuadScalar prime;
  std::vector<SearchStep> iterations;
  Termination terminated = Termination::Fixpoint;
};

/// Thrown when saturation runs out of iterations; carries the partial trace.
class SearchBudgetError : public Error {
 public:
  SearchBudgetError(const std::string& msg, SearchTrace trace)
      : Error(ErrorCode::BudgetExhausted, msg), trace_(std::move(trace)) {}
  const SearchTrace& trace() const { return trace_; }

 private:
  SearchTrace trace_;
};

inline constexpr int kDefaultBudget = 64;

/// {x in order : p | nr(x)} found by a triangular search over the order's
/// basis. Requires N(p) <= 5 and the completion at p to be a division algebra.
OFLattice radical_preimage(const OFLattice& order, const QuadScalar& p);

/// {b in A : b m in M for all m in M}.
OFLattice left_order(const OFLattice& m);

std::pair<OFLattice, SearchTrace> saturate_at_prime(const OFLattice& order, const QuadScalar& p,
                                                    int budget = kDefaultBudget);

// Left O_E-modules of the cyclotomic family, stored by left coefficient
// vectors: row i is sum_k c_k u^k with c_k = 0 for k > i.
struct CompressedBasis {
  AlgPtr algebra;
  std::vector<std::vector<FieldElem>> rows;

  static CompressedBasis natural(const AlgPtr& alg);
  std::vector<AlgebraElem> elements() const;
  /// O_F-lattice spanned by zeta^k g_i.
  OFLattice lattice(const OFLattice* known_sublattice = nullptr) const;
  bool contains(const AlgebraElem& x) const;
  /// -v_pi of the leading coefficients, pi = 1 - zeta.
  std::vector<long> profile() const;
};

CompressedBasis compressed_radical(const CompressedBasis& order);
/// Returns the enlarged basis and the positions that were enlarged.
std::pair<CompressedBasis, std::vector<int>> compressed_left_order(const CompressedBasis& order,
                                                                   const CompressedBasis& radical);

struct CompressedStep {
  CompressedBasis radical;
  CompressedBasis order_after;
  std::vector<int> enlarged_positions;
};

struct CompressedResult {
  CompressedBasis order;
  std::vector<CompressedStep> steps;
  Termination terminated = Termination::Fixpoint;
};

CompressedResult compressed_saturate(const CompressedBasis& start, int budget = kDefaultBudget);

enum class CertStatus { CertifiedMaximal, ExtremalUncertified };
const char* cert_status_name(CertStatus s);

struct Certification {
  CertStatus status = CertStatus::ExtremalUncertified;
  std::string reason;
  DiscriminantValue bound;
};

struct MaxOrderOptions {
  int budget = kDefaultBudget;
  /// Use the O_E-basis search at 1+i for the cyclotomic family.
  bool compressed = true;
  /// Restrict saturation to this prime.
  std::optional<QuadScalar> only_prime;
};

struct MaxOrderResult {
  OFLattice order;
  Certification certification;
  std::vector<SearchTrace> traces;
  std::optional<CompressedResult> compressed;
};

MaxOrderResult find_maximal_order(const Fixture& fixture, const OFLattice& start, const MaxOrderOptions& opts = {});
MaxOrderResult find_maximal_order(const Fixture& fixture, const MaxOrderOptions& opts = {});

Certification certify(const DiscriminantValue& d, CenterId center, int n);

struct RegressionReport {
  bool equal = false;
  std::vector<long> profile;
  long profile_sum = 0;
  std::string first_mismatch;
};

/// Published generators of the maximal orders for l = 4, 5. A displayed term
/// p(s) u^k is the element u^k p(s).
std::vector<AlgebraElem> published_generators(const AlgPtr& alg, int ell);
RegressionReport regression_basis_check(int ell, const OFLattice& order, const std::vector<long>& profile);

}  // namespace cda
