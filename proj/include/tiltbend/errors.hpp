#pragma once

#include <stdexcept>
#include <string>

namespace tiltbend {

/// Malformed or inconsistent input data (files, configs, director tables).
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Structural mesh defects: open edges, orientation mismatches, degenerate
/// faces, non-manifold edges, non-positive enclosed volume.
struct MeshError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Director turned past the local tangent plane: theta . nu <= 0 somewhere.
/// index is the offending face (or vertex when at_vertex is true).
struct FoldoverError : std::runtime_error {
    FoldoverError(const std::string& what, long index_, bool at_vertex_)
        : std::runtime_error(what), index(index_), at_vertex(at_vertex_) {}
    long index;
    bool at_vertex;
};

/// An identity battery or acceptance check failed.
struct VerifyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace tiltbend
