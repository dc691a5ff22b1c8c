#include "mdhits/dataio.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "mdhits/parallel.hpp"

namespace mdhits {

namespace {

using json = nlohmann::json;

constexpr std::size_t kRecordColumns[] = {6, 3, 4, 5};  // coo5, coo2, multiplex, citation

std::size_t column_count(EdgeFormat tag) { return kRecordColumns[static_cast<int>(tag)]; }

std::vector<std::string_view> split_line(std::string_view line, std::optional<char> delimiter) {
    std::vector<std::string_view> fields;
    if (!delimiter) {
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
            std::size_t j = i;
            while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
            if (j > i) fields.push_back(line.substr(i, j - i));
            i = j;
        }
        return fields;
    }
    std::size_t start = 0;
    while (true) {
        const std::size_t end = line.find(*delimiter, start);
        std::string_view field =
            line.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
        while (!field.empty() && std::isspace(static_cast<unsigned char>(field.front()))) {
            field.remove_prefix(1);
        }
        while (!field.empty() && std::isspace(static_cast<unsigned char>(field.back()))) {
            field.remove_suffix(1);
        }
        fields.push_back(field);
        if (end == std::string_view::npos) break;
        start = end + 1;
    }
    return fields;
}

long long parse_integer(std::string_view field, long long line) {
    long long value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw ParseError(line, "non-numeric field '" + std::string(field) + "'");
    }
    return value;
}

double parse_weight(std::string_view field, long long line) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw ParseError(line, "non-numeric field '" + std::string(field) + "'");
    }
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw ParseError(line, "nonpositive weight " + std::string(field));
    }
    return value;
}

Index to_internal_index(long long value, bool one_based, long long line) {
    const long long base = one_based ? 1 : 0;
    if (value < base) {
        throw ParseError(line, "index " + std::to_string(value) + " below " +
                                   (one_based ? "1 (file indices are 1-based)" : "0"));
    }
    return static_cast<Index>(value - base);
}

}  // namespace

EdgeFormat edge_format_from_name(std::string_view name) {
    if (name == "coo5") return EdgeFormat::coo5;
    if (name == "coo2") return EdgeFormat::coo2;
    if (name == "multiplex") return EdgeFormat::multiplex;
    if (name == "citation") return EdgeFormat::citation;
    throw InvalidArgument("unknown edge format '" + std::string(name) +
                          "' (expected coo5, coo2, multiplex, or citation)");
}

std::string_view to_string(EdgeFormat format) {
    switch (format) {
        case EdgeFormat::coo5: return "coo5";
        case EdgeFormat::coo2: return "coo2";
        case EdgeFormat::multiplex: return "multiplex";
        case EdgeFormat::citation: return "citation";
    }
    return "?";
}

ParsedEdgeList parse(std::istream& in, const EdgeRecordFormat& format,
                     std::optional<TensorShape> shape_override) {
    const std::optional<char> delimiter =
        format.delimiter ? format.delimiter
                         : (format.tag == EdgeFormat::multiplex ? std::optional<char>{}
                                                                : std::optional<char>{','});
    const std::size_t columns = column_count(format.tag);

    ParsedEdgeList out;
    std::vector<long long> raw_years;  // citation only, aligned with records
    std::string line;
    long long line_number = 0;
    bool skip_header = format.header;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (skip_header) {
            skip_header = false;
            continue;
        }
        std::vector<std::string_view> fields = split_line(line, delimiter);
        if (fields.empty() || (fields.size() == 1 && fields[0].empty())) continue;
        if (fields.size() != columns) {
            throw ParseError(line_number, "expected " + std::to_string(columns) +
                                              " fields, got " + std::to_string(fields.size()));
        }

        EdgeRecord rec;
        switch (format.tag) {
            case EdgeFormat::coo5: {
                for (int t = 0; t < 5; ++t) {
                    rec.index.push_back(to_internal_index(parse_integer(fields[t], line_number),
                                                          format.one_based, line_number));
                }
                rec.weight = parse_weight(fields[5], line_number);
                break;
            }
            case EdgeFormat::coo2: {
                for (int t = 0; t < 2; ++t) {
                    rec.index.push_back(to_internal_index(parse_integer(fields[t], line_number),
                                                          format.one_based, line_number));
                }
                rec.weight = parse_weight(fields[2], line_number);
                break;
            }
            case EdgeFormat::multiplex: {
                // No cross-layer edges in this format: target layer = source
                // layer, single time stamp.
                const Index i = to_internal_index(parse_integer(fields[0], line_number),
                                                  format.one_based, line_number);
                const Index j = to_internal_index(parse_integer(fields[1], line_number),
                                                  format.one_based, line_number);
                const Index l = to_internal_index(parse_integer(fields[2], line_number),
                                                  format.one_based, line_number);
                rec.index = {i, j, l, l, 0};
                rec.weight = parse_weight(fields[3], line_number);
                break;
            }
            case EdgeFormat::citation: {
                const Index i = to_internal_index(parse_integer(fields[0], line_number),
                                                  format.one_based, line_number);
                const Index j = to_internal_index(parse_integer(fields[1], line_number),
                                                  format.one_based, line_number);
                const Index l = to_internal_index(parse_integer(fields[2], line_number),
                                                  format.one_based, line_number);
                const Index k = to_internal_index(parse_integer(fields[3], line_number),
                                                  format.one_based, line_number);
                const long long year = parse_integer(fields[4], line_number);
                rec.index = {i, j, l, k, 0};  // time filled after the year remap
                rec.weight = 1.0;
                raw_years.push_back(year);
                break;
            }
        }
        out.records.push_back(std::move(rec));
    }

    if (format.tag == EdgeFormat::citation) {
        // Order-preserving contiguous remap so the time mode has no
        // structurally empty slice.
        std::map<long long, Index> remap;
        for (long long y : raw_years) remap.emplace(y, 0);
        Index next = 0;
        for (auto& [year, idx] : remap) idx = next++;
        for (std::size_t r = 0; r < out.records.size(); ++r) {
            out.records[r].index[4] = remap[raw_years[r]];
        }
        out.time_labels.reserve(remap.size());
        for (const auto& [year, idx] : remap) out.time_labels.push_back(year);
    }

    if (shape_override) {
        out.shape = *shape_override;
        return out;
    }

    // Per-mode maxima, with node modes and layer modes symmetrized.
    const Index m = format.tag == EdgeFormat::coo2 ? 2 : 5;
    std::vector<Index> sizes(static_cast<std::size_t>(m), 1);
    for (const EdgeRecord& rec : out.records) {
        for (Index t = 0; t < m; ++t) {
            sizes[static_cast<std::size_t>(t)] =
                std::max(sizes[static_cast<std::size_t>(t)], rec.index[static_cast<std::size_t>(t)] + 1);
        }
    }
    sizes[0] = sizes[1] = std::max(sizes[0], sizes[1]);
    if (m == 5) sizes[2] = sizes[3] = std::max(sizes[2], sizes[3]);
    out.shape = TensorShape(std::move(sizes));
    return out;
}

ParsedEdgeList parse_file(const std::string& path, const EdgeRecordFormat& format,
                          std::optional<TensorShape> shape_override) {
    std::ifstream in(path);
    if (!in) throw IoError(path, "cannot open for reading");
    return parse(in, format, std::move(shape_override));
}

SparseTensor load_tensor(const std::string& path, const EdgeRecordFormat& format,
                         std::optional<TensorShape> shape_override) {
    ParsedEdgeList parsed = parse_file(path, format, std::move(shape_override));
    return SparseTensor::from_edge_list(parsed.records, parsed.shape);
}

Index SynthSpec::n_time() const {
    return static_cast<Index>(std::floor(std::cbrt(static_cast<double>(n_v)) + 0.5));
}

TensorShape SynthSpec::shape() const { return TensorShape({n_v, n_v, n_layers(), n_layers(), n_time()}); }

SparseTensor generate_random(const SynthSpec& spec) {
    if (spec.n_v < 2) throw InvalidArgument("generate_random: n_v must be at least 2");
    const TensorShape shape = spec.shape();
    const Index target = spec.nnz();

    // Distinct uniform tuples by rejection; tuples are keyed by their linear
    // offset, which fits 64 bits at any size this recipe reaches.
    detail::SplitMix64 rng(spec.seed);
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(static_cast<std::size_t>(target) * 2);
    std::vector<EdgeRecord> records;
    records.reserve(static_cast<std::size_t>(target));
    while (static_cast<Index>(records.size()) < target) {
        EdgeRecord rec;
        rec.index.resize(5);
        std::uint64_t key = 0;
        for (Index t = 0; t < 5; ++t) {
            const Index v = rng.next_below(shape.size(t));
            rec.index[static_cast<std::size_t>(t)] = v;
            key = key * static_cast<std::uint64_t>(shape.size(t)) + static_cast<std::uint64_t>(v);
        }
        if (!seen.insert(key).second) continue;
        rec.weight = 1.0;
        records.push_back(std::move(rec));
    }
    return SparseTensor::from_edge_list(records, shape);
}

namespace {

std::vector<std::string> vector_names(Index order) {
    if (order == 5) return {"hub", "authority", "broadcast", "receive", "time"};
    if (order == 2) return {"hub", "authority"};
    throw InvalidArgument("solution serialization supports orders 5 and 2, got " +
                          std::to_string(order));
}

void write_csv_vector(const std::string& path, const std::vector<double>& scores) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw IoError(path, "cannot open for writing");
    std::fputs("id,score\n", f);
    for (std::size_t i = 0; i < scores.size(); ++i) {
        std::fprintf(f, "%zu,%.17g\n", i + 1, scores[i]);
    }
    if (std::fclose(f) != 0) throw IoError(path, "write failed");
}

}  // namespace

void write_solution(const Solution& solution, const std::string& path, OutputFormat format) {
    const std::vector<std::string> names = vector_names(solution.c.order());

    if (format == OutputFormat::csv) {
        std::string stem = path;
        if (stem.size() > 4 && stem.substr(stem.size() - 4) == ".csv") {
            stem.resize(stem.size() - 4);
        }
        for (std::size_t s = 0; s < names.size(); ++s) {
            write_csv_vector(stem + "_" + names[s] + ".csv", solution.c.slices[s]);
        }
        return;
    }

    json doc;
    for (std::size_t s = 0; s < names.size(); ++s) doc[names[s]] = solution.c.slices[s];
    doc["lambda"] = solution.lambda;
    doc["sigma"] = solution.sigma;
    doc["iterations"] = solution.iterations;
    doc["converged"] = solution.converged;
    doc["alpha"] = solution.alpha;
    doc["rho"] = solution.rho;
    doc["beta"] = solution.beta;
    json trace = json::array();
    for (const TraceEntry& e : solution.trace) {
        trace.push_back({{"k", e.iteration}, {"step", e.step}, {"bound", e.bound}});
    }
    doc["trace"] = std::move(trace);

    std::ofstream out(path);
    if (!out) throw IoError(path, "cannot open for writing");
    out << doc.dump(2) << '\n';
    if (!out) throw IoError(path, "write failed");
}

Solution read_solution(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError(path, "cannot open for reading");
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw IoError(path, std::string("invalid solution json: ") + e.what());
    }

    Solution solution;
    try {
        const Index order = doc.contains("broadcast") ? 5 : 2;
        for (const std::string& name : vector_names(order)) {
            solution.c.slices.push_back(doc.at(name).get<std::vector<double>>());
        }
        solution.lambda = doc.at("lambda").get<std::vector<double>>();
        solution.sigma = doc.at("sigma").get<double>();
        solution.iterations = doc.at("iterations").get<int>();
        solution.converged = doc.at("converged").get<bool>();
        solution.alpha = doc.at("alpha").get<std::vector<double>>();
        solution.rho = doc.at("rho").get<double>();
        solution.beta = doc.at("beta").get<std::vector<double>>();
        for (const json& e : doc.at("trace")) {
            solution.trace.push_back(
                {e.at("k").get<int>(), e.at("step").get<double>(), e.at("bound").get<double>()});
        }
    } catch (const json::exception& e) {
        throw IoError(path, std::string("invalid solution json: ") + e.what());
    }
    return solution;
}

void write_edge_list(const SparseTensor& tensor, std::ostream& out) {
    const Index m = tensor.order();
    if (m != 2 && m != 5) {
        throw InvalidArgument("edge list serialization supports orders 5 and 2, got " +
                              std::to_string(m));
    }
    char buf[64];
    for (Index p = 0; p < tensor.nnz(); ++p) {
        auto ix = tensor.entry_index(p);
        for (Index t = 0; t < m; ++t) {
            out << (ix[static_cast<std::size_t>(t)] + 1) << ',';
        }
        std::snprintf(buf, sizeof buf, "%.17g", tensor.entry_weight(p));
        out << buf << '\n';
    }
}

void write_edge_list_file(const SparseTensor& tensor, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError(path, "cannot open for writing");
    write_edge_list(tensor, out);
    if (!out) throw IoError(path, "write failed");
}

}  // namespace mdhits
