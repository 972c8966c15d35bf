#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "soc/errors.hpp"
#include "soc/functor.hpp"
#include "soc/matrix.hpp"
#include "soc/symseq.hpp"

namespace soc {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// CSV formatting: 17 significant digits, '.' decimal separator, LF endings.
// ---------------------------------------------------------------------------

inline std::string format_value(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string format_value(const BigInt& v) { return v.str(); }
inline std::string format_value(int v) { return std::to_string(v); }
inline std::string format_value(std::size_t v) { return std::to_string(v); }
inline std::string format_value(bool v) { return v ? "1" : "0"; }
inline std::string format_value(const std::string& v) { return v; }

/// Accumulates rows and renders byte-stable CSV text.
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {}

    template <class... Ts>
    void row(const Ts&... cells) {
        std::vector<std::string> r{format_value(cells)...};
        if (r.size() != header_.size()) throw validation_error("CsvWriter: column count mismatch");
        rows_.push_back(std::move(r));
    }

    std::string str() const {
        std::ostringstream os;
        for (std::size_t i = 0; i < header_.size(); ++i) {
            if (i) os << ',';
            os << header_[i];
        }
        os << '\n';
        for (const auto& r : rows_) {
            for (std::size_t i = 0; i < r.size(); ++i) {
                if (i) os << ',';
                os << r[i];
            }
            os << '\n';
        }
        return os.str();
    }

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw validation_error("cannot open for writing: " + path);
    out << content;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw validation_error("cannot open for reading: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

/// FNV-1a over the canonical dump; keys configs to their artifacts.
inline std::string fnv1a_hex(const std::string& s) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// ---------------------------------------------------------------------------
// JSON schemas
// ---------------------------------------------------------------------------

inline void require_keys(const json& j, const std::vector<std::string>& required,
                         const std::vector<std::string>& optional, const std::string& what) {
    if (!j.is_object()) throw validation_error(what + ": expected a JSON object");
    for (const auto& k : required) {
        if (!j.contains(k)) throw validation_error(what + ": missing key '" + k + "'");
    }
    for (const auto& item : j.items()) {
        const std::string& k = item.key();
        bool known = false;
        for (const auto& r : required) known = known || r == k;
        for (const auto& o : optional) known = known || o == k;
        if (!known) throw validation_error(what + ": unknown key '" + k + "'");
    }
}

// Matrix <-> {"rows":n,"cols":n,"re":[...],"im":[...]}

inline json to_json(const DenseMatrix& m) {
    json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    std::vector<double> re, im;
    re.reserve(m.entry_count());
    im.reserve(m.entry_count());
    for (const complexd& z : m.data()) {
        re.push_back(z.real());
        im.push_back(z.imag());
    }
    j["re"] = re;
    j["im"] = im;
    return j;
}

inline DenseMatrix matrix_from_json(const json& j) {
    require_keys(j, {"rows", "cols", "re"}, {"im"}, "matrix");
    const std::size_t rows = j.at("rows").get<std::size_t>();
    const std::size_t cols = j.at("cols").get<std::size_t>();
    const auto re = j.at("re").get<std::vector<double>>();
    std::vector<double> im(re.size(), 0.0);
    if (j.contains("im")) im = j.at("im").get<std::vector<double>>();
    if (re.size() != rows * cols || im.size() != rows * cols) {
        throw validation_error("matrix: entry arrays must have rows*cols elements");
    }
    DenseMatrix m(rows, cols);
    for (std::size_t i = 0; i < re.size(); ++i) m.data()[i] = complexd(re[i], im[i]);
    require_finite(m, "matrix");
    return m;
}

// SymSeq <-> {"max_degree":N,"dims":[...],"weights":[...],"reduced":bool}

inline json to_json(const SymSeq& s) {
    json j;
    j["max_degree"] = s.max_degree;
    std::vector<std::int64_t> dims;
    std::vector<double> weights;
    for (const auto& e : s.entries) {
        dims.push_back(static_cast<std::int64_t>(e.dim));
        weights.push_back(e.weight);
    }
    j["dims"] = dims;
    j["weights"] = weights;
    j["reduced"] = s.reduced;
    return j;
}

inline SymSeq symseq_from_json(const json& j) {
    require_keys(j, {"max_degree", "dims"}, {"weights", "reduced"}, "symseq");
    SymSeq s;
    s.max_degree = j.at("max_degree").get<int>();
    const auto dims = j.at("dims").get<std::vector<std::int64_t>>();
    std::vector<double> weights(dims.size(), 0.0);
    if (j.contains("weights")) weights = j.at("weights").get<std::vector<double>>();
    if (static_cast<int>(dims.size()) != s.max_degree + 1 || weights.size() != dims.size()) {
        throw validation_error("symseq: dims/weights must have max_degree+1 elements");
    }
    s.entries.resize(dims.size());
    for (std::size_t i = 0; i < dims.size(); ++i) s.entries[i] = {BigInt(dims[i]), weights[i]};
    s.reduced = j.value("reduced", is_reduced_data(s));
    validate(s);
    return s;
}

// Functor spec <-> {"kind":..., "truncation":..., "coeffs":..., "value":..., "reduced":...}

inline json to_json(const PowerSeriesFunctor& f) {
    json j;
    j["kind"] = "polynomial";
    j["coeffs"] = f.coeffs;
    j["name"] = f.name;
    return j;
}

inline PowerSeriesFunctor functor_from_json(const json& j) {
    require_keys(j, {"kind"}, {"truncation", "coeffs", "value", "reduced", "name"}, "functor");
    const std::string kind = j.at("kind").get<std::string>();
    const int truncation = j.value("truncation", 16);
    PowerSeriesFunctor f;
    if (kind == "identity") {
        f = make_canonical(FunctorKind::identity, truncation);
    } else if (kind == "constant") {
        f = make_canonical(FunctorKind::constant, truncation, j.value("value", 0.0));
    } else if (kind == "quadratic") {
        f = make_canonical(FunctorKind::quadratic, truncation);
    } else if (kind == "exponential") {
        f = make_canonical(FunctorKind::exponential, truncation);
    } else if (kind == "geometric") {
        f = make_canonical(FunctorKind::geometric, truncation);
    } else if (kind == "factorial") {
        f = make_canonical(FunctorKind::factorial, truncation);
    } else if (kind == "polynomial") {
        if (!j.contains("coeffs")) throw validation_error("functor: polynomial needs 'coeffs'");
        const auto coeffs = j.at("coeffs").get<std::vector<double>>();
        const int n = std::max<int>(truncation, static_cast<int>(coeffs.size()) - 1);
        f = make_canonical(FunctorKind::polynomial, n, 0.0, coeffs);
    } else {
        throw validation_error("functor: unknown kind '" + kind + "'");
    }
    if (j.value("reduced", false)) f = reduce(f);
    if (j.contains("name")) f.name = j.at("name").get<std::string>();
    return f;
}

} // namespace soc
