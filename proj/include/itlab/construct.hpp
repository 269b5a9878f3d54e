#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "itlab/error.hpp"
#include "itlab/graph.hpp"
#include "itlab/rational.hpp"

namespace itlab {

struct NoItCertificate;
using CertificatePtr = std::shared_ptr<const NoItCertificate>;

/// A composition tree proving that a partitioned graph has no IT.
/// Vertex ids refer to the final graph. A leaf contributes the block list
/// [a_side, b_side]; a join contributes the left list (with the absorbed
/// vertices added) followed by the right list minus the absorbed block.
struct NoItCertificate {
    enum class Kind { Leaf, Join };
    Kind kind = Kind::Leaf;

    // Leaf: complete bipartite K_{a,b} with its two sides as blocks.
    std::size_t a = 0;
    std::size_t b = 0;
    std::vector<Vertex> a_side;
    std::vector<Vertex> b_side;

    // Join: left plays J, right plays H; `absorbed` indexes right's block list.
    CertificatePtr left;
    CertificatePtr right;
    BlockId absorbed = 0;
    std::vector<std::pair<Vertex, BlockId>> distribution; ///< (vertex, left block), sorted by vertex

    friend bool operator==(const NoItCertificate& x, const NoItCertificate& y);
};

struct CertifiedInstance {
    PartitionedGraph pg;
    CertificatePtr cert;
};

/// K_{a,b}: vertices 0..a-1 form block 0, a..a+b-1 form block 1.
CertifiedInstance complete_bipartite_gadget(std::size_t a, std::size_t b);

/// Join of disjoint instances: left vertices keep their ids, right vertices
/// are shifted by |V(left)|. Blocks are left's (enlarged) then right's minus
/// `absorbed`. `distribution` maps every vertex of right's block `absorbed`
/// (right's ids) to a block of left.
CertifiedInstance join(const CertifiedInstance& left, const CertifiedInstance& right, BlockId absorbed,
                       const std::vector<std::pair<Vertex, BlockId>>& distribution);

struct CertificateCheck {
    bool ok = false;
    std::string diagnostic; ///< empty when ok; otherwise the failing node path and reason

    explicit operator bool() const noexcept { return ok; }
};

/// Replays the certificate against pg. ok implies pg has no IT.
CertificateCheck check_certificate(const PartitionedGraph& pg, const NoItCertificate& cert);

/// A finite-t feasibility check of a construction failed. `check()` names it.
class FeasibilityError : public Error {
public:
    FeasibilityError(std::string check, const std::string& message)
        : Error(check + ": " + message), check_(std::move(check)) {}

    const std::string& check() const noexcept { return check_; }

private:
    std::string check_;
};

struct LayerSequence {
    std::size_t t = 0;
    Rational alpha;
    Rational beta;
    std::vector<std::size_t> d; ///< d_1 < ... < d_k = min(t, ⌊αt⌋)
};

/// d_1 = ⌊βt⌋ then steps of one up to min(t, ⌊αt⌋), or a validated override.
/// Requires (1/t)(d_j + (t − d_j)d_{j+1}) ≤ βt for j = 0..k−1 with d_0 = 0.
LayerSequence sequence(std::size_t t, const Rational& alpha, const Rational& beta,
                       const std::optional<std::vector<std::size_t>>& override_d = std::nullopt);

/// Layered stars: t copies of K_{1,d_1} with the centres as the initial block,
/// then each terminal block is grown to size t with K_{1,d_{j+1}} gadgets.
CertifiedInstance gen_layered(std::size_t t, const Rational& alpha, const Rational& beta,
                              const std::optional<std::vector<std::size_t>>& override_d = std::nullopt);

/// One augmentation round on deficient block u: adds K_{t−⌊αt⌋+C, ⌊αt⌋} in
/// front, moves the ⌊αt⌋ − C lowest ids of u to its A-side, the rest to its B-side.
CertifiedInstance augment_step(const CertifiedInstance& in, BlockId u, std::size_t t, const Rational& alpha,
                               std::size_t c = 1);

enum class AugmentStrategy { Step, Single };

struct AugmentOptions {
    std::size_t c = 1;
    AugmentStrategy strategy = AugmentStrategy::Step;
    std::optional<std::vector<std::size_t>> sequence;
};

/// gen_layered followed by augmentation until every block has size ≥ t.
/// Throws FeasibilityError naming the first failing check.
CertifiedInstance gen_augmented(std::size_t t, const Rational& alpha, const Rational& beta,
                                const AugmentOptions& options = {});

} // namespace itlab
