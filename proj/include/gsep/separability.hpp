#pragma once

// Separability of R over R_Delta: the relative-trace criterion, its normal and
// twisted specializations, certificates and the tensor-level oracle.

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gsep/graded.hpp"
#include "gsep/tensor.hpp"

namespace gsep {

struct ExtensionOptions {
  TieBreak tie = TieBreak::SmallestIndex;
  PartitionOptions partition;
};

class RelativeExtension {
 public:
  /// Requires a strongly graded ring (NotStronglyGraded otherwise) and a wide
  /// subgroupoid of the ring's own groupoid.
  static RelativeExtension make(GradedRingPtr ring, WideSubgroupoid delta, const ExtensionOptions& options = {});

  const GradedRing& ring() const { return *ring_; }
  const GradedRingPtr& ring_ptr() const { return ring_; }
  const WideSubgroupoid& delta() const { return delta_; }
  const WideSubgroupoid& lambda() const { return lambda_; }
  const Transversal& transversal() const { return transversal_; }
  const PartitionEntry& partition(MorphismId s) const { return partition_[s]; }
  const ExtensionOptions& options() const { return options_; }

 private:
  RelativeExtension(GradedRingPtr ring, WideSubgroupoid delta, WideSubgroupoid lambda, Transversal t,
                    std::vector<PartitionEntry> pu, ExtensionOptions options)
      : ring_(std::move(ring)), delta_(std::move(delta)), lambda_(std::move(lambda)), transversal_(std::move(t)),
        partition_(std::move(pu)), options_(options) {}

  GradedRingPtr ring_;
  WideSubgroupoid delta_;
  WideSubgroupoid lambda_;
  Transversal transversal_;
  std::vector<PartitionEntry> partition_;
  ExtensionOptions options_;
};

/// sum_i u_i x v_i over the stored partition of unity at s.
Vector gamma(const RelativeExtension& ext, MorphismId s, std::span<const Residue> x);
/// Sum of gamma_t(r) over representatives t with codomain e.
Vector relative_trace(const RelativeExtension& ext, ObjectId e, std::span<const Residue> r);

/// C_{R_f}(R_{Delta(f)}) for each object f, as generators.
std::vector<std::vector<Vector>> central_pieces(const RelativeExtension& ext);
/// Generators of C_{R_0}(R_Lambda).
std::vector<Vector> central_subring(const RelativeExtension& ext);
bool in_central_subring(const RelativeExtension& ext, std::span<const Residue> r);

enum class Method { Trace, Normal, Twisted, Oracle };
const char* method_name(Method m);
std::optional<Method> parse_method(std::string_view name);

struct Certificate {
  ObjectId f = 0;
  Vector r;
};

/// Why a linear system had no solution.
struct Evidence {
  std::size_t obstruction = npos;
  Residue residual = 0;
  std::size_t equations = 0;
  std::size_t unknowns = 0;
  std::size_t pivots = 0;
};

struct ComponentReport {
  std::vector<ObjectId> objects;
  bool separable = false;
  std::optional<Certificate> certificate;
  std::vector<ObjectId> candidates;  // objects tried, in order
  std::optional<Evidence> evidence;
  std::vector<MorphismId> transversal;
};

struct SeparabilityReport {
  bool separable = false;
  Method method = Method::Trace;
  std::vector<ComponentReport> components;
  /// Oracle only: x_u per object, in the presentation's ambient coordinates.
  std::vector<Vector> element;
  std::shared_ptr<const TensorPresentation> presentation;
};

SeparabilityReport decide_trace(const RelativeExtension& ext);
/// Throws NotNormal(sigma, delta) unless Delta is normal.
SeparabilityReport decide_normal(const RelativeExtension& ext);
/// Needs a crossed product with trivial alpha; throws AlphaNotTrivial(s).
SeparabilityReport decide_twisted(const RelativeExtension& ext);
/// sum of alpha_t(a) over T_{f,e}; a must lie in Z(A_f)^{Delta(f)}.
Vector crossed_trace(const RelativeExtension& ext, ObjectId f, ObjectId e, std::span<const Residue> a);

struct OracleOptions {
  std::size_t max_rank = kDefaultMaxRank;
};
/// Solves for a separability element of R over the subring spanned by the
/// given basis indices, one connected component at a time.
SeparabilityReport oracle_decide(const GradedRing& r, std::span<const std::size_t> subring,
                                 const OracleOptions& options = {});

struct ElementFamily {
  std::shared_ptr<const TensorPresentation> presentation;  // over R_Lambda
  std::vector<Vector> x;                                   // per object
};
/// Builds x_e from one certificate per component and verifies mu(x_e) = 1_e
/// and s x_v = x_u s on homogeneous basis elements. Throws VerificationFailed.
ElementFamily certificate_to_element(const RelativeExtension& ext, std::span<const Certificate> certs,
                                     const OracleOptions& options = {});

/// Checks a separability element family against R (x)_S R.
std::optional<Violation> verify_element(const GradedRing& r, const TensorPresentation& t, std::span<const Vector> x);

struct CertifyOutcome {
  bool ok = true;
  std::string step;  // component | membership | trace | element
  std::vector<std::int64_t> witness;
  std::string detail;
};
/// Re-verifies certificates (one per component, any order) from scratch.
CertifyOutcome certify(const RelativeExtension& ext, std::span<const Certificate> certs,
                       const OracleOptions& options = {});

}  // namespace gsep
