#pragma once

// System data model: seed-space descriptor, per-level connecting-map data,
// and the inductive-system container consumed by every other module.
//
// A system is a finite truncation of a decorated Bratteli diagram.  Level n
// carries a coordinate-projection multiplicity matrix M and a
// point-evaluation count matrix E, both row-indexed by source vertex and
// column-indexed by target vertex.  Only counts of evaluation points are
// kept; their locations never enter any formula in scope.

#include <villab/rational.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace villab {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Stratum {
    std::string label;
    std::uint64_t locdim = 0;

    bool operator==(const Stratum&) const = default;
};

/// Symbolic seed-space descriptor.  The topology itself is never modeled:
/// every formula in scope consumes only dim(X) and the loc.dim strata.
struct SeedSpace {
    std::uint64_t dim = 0;
    std::vector<Stratum> strata;
    bool k_contractible = false;
    bool solid = false;
    bool connected = false;

    bool operator==(const SeedSpace&) const = default;

    /// strata nonempty, all locdim <= dim, some stratum attains dim.
    void validate() const;

    /// Theorem-gated operations need 0 < dim(X) < infinity.
    void require_positive_dim() const;
};

/// One level of the diagram: vertex counts on both sides plus the two
/// multiplicity matrices.
struct LevelData {
    IntMatrix M;  // coordinate-projection multiplicities m^{(n)}_{i,j}
    IntMatrix E;  // point-evaluation counts |E^{(n)}_{i,j}|

    std::size_t s_prev() const { return M.rows(); }
    std::size_t s_next() const { return M.cols(); }

    bool operator==(const LevelData&) const = default;
};

/// A finite truncation of an AF-Villadsen inductive system.  Stages are
/// 1-based: a system with L levels has stages 1..L+1.
struct VilladsenSystem {
    SeedSpace seed;
    IntVector u1;
    std::vector<LevelData> levels;

    bool operator==(const VilladsenSystem&) const = default;

    /// Number of stages (levels + 1).
    std::size_t num_stages() const { return levels.size() + 1; }

    /// Vertex count at stage n (1-based).
    std::size_t vertex_count(std::size_t stage) const;

    /// Full validation; throws ValidationError naming the offending
    /// level/column on failure.
    void validate() const;
};

/// Parse and validate a system file (full or "uhf" shorthand form).
VilladsenSystem load_system(const std::string& path);

/// Parse a system from a JSON string (exposed for tests and the CLI).
VilladsenSystem parse_system(const std::string& json_text);

/// Canonical JSON serialization; parse_system(serialize(s)) == s.
std::string serialize(const VilladsenSystem& system);

/// Single-vertex UHF-type system: M_s = [[n_s]], E_s = [[k_s]], u1 = [1].
VilladsenSystem generate_uhf_system(const SeedSpace& seed,
                                    const std::vector<std::uint64_t>& n_seq,
                                    const std::vector<std::uint64_t>& k_seq);

}  // namespace villab
