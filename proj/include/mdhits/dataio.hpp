#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mdhits/solver.hpp"
#include "mdhits/tensor.hpp"

namespace mdhits {

/// Supported edge-list layouts.
///   coo5      i,j,l,k,t,w   full temporal-multilayer coordinates
///   coo2      i,j,w         monolayer adjacency
///   multiplex i j l w       intra-layer edge, expanded to (i,j,l,l,1)
///   citation  i,j,l,k,year  weight 1; years remapped to contiguous 1..n_T
enum class EdgeFormat { coo5, coo2, multiplex, citation };

EdgeFormat edge_format_from_name(std::string_view name);
std::string_view to_string(EdgeFormat format);

struct EdgeRecordFormat {
    EdgeFormat tag = EdgeFormat::coo5;
    /// Field separator; unset means the format default (whitespace for
    /// multiplex, comma otherwise).
    std::optional<char> delimiter;
    bool header = false;
    bool one_based = true;  // indices in files are 1-based by default
};

struct ParsedEdgeList {
    std::vector<EdgeRecord> records;  // zero-based, ready for from_edge_list
    TensorShape shape;
    /// citation format only: original year carried by each time index.
    std::vector<long long> time_labels;
};

/// Parses a delimited edge list. The shape is inferred from per-mode maxima
/// (node and layer modes symmetrized) unless an override is given; malformed
/// lines are reported with their 1-based line number.
ParsedEdgeList parse(std::istream& in, const EdgeRecordFormat& format,
                     std::optional<TensorShape> shape_override = {});

ParsedEdgeList parse_file(const std::string& path, const EdgeRecordFormat& format,
                          std::optional<TensorShape> shape_override = {});

/// parse + from_edge_list in one step.
SparseTensor load_tensor(const std::string& path, const EdgeRecordFormat& format,
                         std::optional<TensorShape> shape_override = {});

/// Synthetic sparse tensor recipe: n_L = n_V, n_T = round(n_V^(1/3))
/// (half up), nnz = n_V * n_L distinct uniform index tuples of weight 1.
struct SynthSpec {
    Index n_v = 0;
    std::uint64_t seed = 0;

    Index n_layers() const noexcept { return n_v; }
    Index n_time() const;
    Index nnz() const noexcept { return n_v * n_layers(); }
    TensorShape shape() const;
};

/// Deterministic given the seed: the same spec always produces the identical
/// tensor.
SparseTensor generate_random(const SynthSpec& spec);

enum class OutputFormat { json, csv };

/// json: one object holding the score vectors (hub, authority, broadcast,
/// receive, time for order 5; hub, authority for order 2) plus lambda, sigma,
/// iterations, converged, alpha, rho, beta, and the iteration trace. Scores
/// survive a round trip exactly.
/// csv: one file per score vector ("<stem>_hub.csv", ...) with header
/// id,score and 1-based ids at 17 significant digits.
void write_solution(const Solution& solution, const std::string& path, OutputFormat format);

/// Reads a json solution written by write_solution.
Solution read_solution(const std::string& path);

/// Canonical edge list of a tensor: coo5 lines for order 5, coo2 for order 2,
/// comma-delimited, 1-based. parse() of the output reproduces the tensor.
void write_edge_list(const SparseTensor& tensor, std::ostream& out);
void write_edge_list_file(const SparseTensor& tensor, const std::string& path);

}  // namespace mdhits
