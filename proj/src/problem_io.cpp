#include "lipext/problem_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace lipext {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

// element payload -> flat data
std::vector<double> parse_element_data(const SpaceDescriptor& space, const json& j) {
    std::vector<double> data;
    const auto push_complex = [&](const json& c) {
        if (!c.is_array() || c.size() != 2) fail("complex entries must be [re, im] pairs");
        data.push_back(c[0].get<double>());
        data.push_back(c[1].get<double>());
    };
    switch (space.kind) {
        case SpaceKind::RealSup:
        case SpaceKind::RealEuclid:
            if (!j.is_array()) fail("vector values must be arrays");
            for (const auto& x : j) data.push_back(x.get<double>());
            break;
        case SpaceKind::ComplexPlane: push_complex(j); break;
        case SpaceKind::SeqSupComplex:
            if (!j.is_array()) fail("seq-sup values must be arrays of [re, im] pairs");
            for (const auto& c : j) push_complex(c);
            break;
        case SpaceKind::MatrixFull:
        case SpaceKind::MatrixSA:
            if (!j.is_array()) fail("matrix values must be arrays of rows");
            for (const auto& row : j) {
                if (!row.is_array()) fail("matrix rows must be arrays");
                for (const auto& c : row) push_complex(c);
            }
            break;
    }
    return data;
}

// flat data -> element payload, written with fmt()
void write_element_data(std::ostream& os, const SpaceElement& v) {
    const auto& d = v.data;
    const auto complex_at = [&](int i) {
        return "[" + fmt(d[2 * i]) + "," + fmt(d[2 * i + 1]) + "]";
    };
    switch (v.space.kind) {
        case SpaceKind::RealSup:
        case SpaceKind::RealEuclid: {
            os << '[';
            for (int i = 0; i < v.space.param; ++i) os << (i ? "," : "") << fmt(d[i]);
            os << ']';
            return;
        }
        case SpaceKind::ComplexPlane: os << complex_at(0); return;
        case SpaceKind::SeqSupComplex: {
            os << '[';
            for (int i = 0; i < v.space.param; ++i) os << (i ? "," : "") << complex_at(i);
            os << ']';
            return;
        }
        case SpaceKind::MatrixFull:
        case SpaceKind::MatrixSA: {
            const int n = v.space.param;
            os << '[';
            for (int i = 0; i < n; ++i) {
                os << (i ? ",[" : "[");
                for (int j = 0; j < n; ++j) os << (j ? "," : "") << complex_at(i * n + j);
                os << ']';
            }
            os << ']';
            return;
        }
    }
}

std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

void write_space(std::ostream& os, const SpaceDescriptor& space) {
    os << "{\"kind\":" << quoted(kind_name(space.kind)) << ","
       << (space.is_matrix() ? "\"n\"" : "\"k\"") << ":" << space.param << "}";
}

void write_assignment(std::ostream& os, const ProblemInstance& inst,
                      const std::vector<SpaceElement>& values) {
    os << '{';
    for (int z = 0; z < inst.space.size(); ++z) {
        os << (z ? "," : "") << quoted(inst.space.labels()[z]) << ':';
        write_element_data(os, values[z]);
    }
    os << '}';
}

}  // namespace

SpaceDescriptor parse_descriptor(const std::string& kind, int param) {
    if (kind == "real-sup") return make_descriptor(SpaceKind::RealSup, param);
    if (kind == "euclid") return make_descriptor(SpaceKind::RealEuclid, param);
    if (kind == "complex") return make_descriptor(SpaceKind::ComplexPlane, 1);
    if (kind == "seq-sup") return make_descriptor(SpaceKind::SeqSupComplex, param);
    if (kind == "mn") return make_descriptor(SpaceKind::MatrixFull, param);
    if (kind == "mn-sa") return make_descriptor(SpaceKind::MatrixSA, param);
    fail("unknown space kind: " + kind);
}

ProblemInstance parse_problem(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        fail(std::string("problem file is not valid JSON: ") + e.what());
    }
    if (!j.contains("space") || !j.contains("metric") || !j.contains("subset") ||
        !j.contains("values"))
        fail("problem file needs space, metric, subset and values");

    const json& js = j["space"];
    int param = 1;
    if (js.contains("n")) param = js["n"].get<int>();
    else if (js.contains("k")) param = js["k"].get<int>();
    const SpaceDescriptor space = parse_descriptor(js["kind"].get<std::string>(), param);

    const json& jm = j["metric"];
    std::vector<std::string> labels = jm["labels"].get<std::vector<std::string>>();
    const json& rows = jm["dist"];
    if (!rows.is_array() || rows.size() != labels.size()) fail("dist must be a square matrix");
    std::vector<double> dist;
    dist.reserve(labels.size() * labels.size());
    for (const auto& row : rows) {
        if (!row.is_array() || row.size() != labels.size()) fail("dist must be a square matrix");
        for (const auto& x : row) dist.push_back(x.get<double>());
    }
    FiniteMetricSpace metric(std::move(labels), std::move(dist));

    PartialFunction f;
    f.target = space;
    for (const auto& lbl : j["subset"]) {
        const std::string name = lbl.get<std::string>();
        f.subset.push_back(metric.index_of(name));
        if (!j["values"].contains(name)) fail("missing value for subset point " + name);
        f.values.push_back(make_element(space, parse_element_data(space, j["values"][name])));
    }
    validate_partial_function(metric, f);
    return ProblemInstance{std::move(metric), std::move(f)};
}

ProblemInstance read_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open problem file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_problem(buf.str());
}

std::string problem_to_json(const ProblemInstance& inst) {
    std::ostringstream os;
    os << "{\"space\":";
    write_space(os, inst.f.target);
    os << ",\"metric\":{\"labels\":[";
    const int m = inst.space.size();
    for (int i = 0; i < m; ++i) os << (i ? "," : "") << quoted(inst.space.labels()[i]);
    os << "],\"dist\":[";
    for (int i = 0; i < m; ++i) {
        os << (i ? ",[" : "[");
        for (int j = 0; j < m; ++j) os << (j ? "," : "") << fmt(inst.space.d(i, j));
        os << ']';
    }
    os << "]},\"subset\":[";
    for (size_t i = 0; i < inst.f.subset.size(); ++i)
        os << (i ? "," : "") << quoted(inst.space.labels()[inst.f.subset[i]]);
    os << "],\"values\":{";
    for (size_t i = 0; i < inst.f.subset.size(); ++i) {
        os << (i ? "," : "") << quoted(inst.space.labels()[inst.f.subset[i]]) << ':';
        write_element_data(os, inst.f.values[i]);
    }
    os << "}}";
    return os.str();
}

std::string extension_result_to_json(const ProblemInstance& inst, const ExtensionResult& r) {
    std::ostringstream os;
    os << "{\"method\":" << quoted(r.method) << ",\"space\":";
    write_space(os, inst.f.target);
    os << ",\"input_lipschitz\":" << fmt(r.input_lipschitz)
       << ",\"achieved_lipschitz\":" << fmt(r.achieved_lipschitz)
       << ",\"achieved_sup\":" << fmt(r.achieved_sup) << ",\"ratio\":" << fmt(r.ratio)
       << ",\"restriction_error\":" << fmt(r.restriction_error)
       << ",\"guarantee\":" << quoted(r.guarantee);
    if (r.nodes > 0) os << ",\"nodes\":" << r.nodes << ",\"seed\":" << r.seed;
    os << ",\"assignment\":";
    write_assignment(os, inst, r.assignment);
    os << "}";
    return os.str();
}

std::string oracle_result_to_json(const ProblemInstance& inst, const OracleResult& r,
                                  const OracleOptions& opt) {
    std::ostringstream os;
    os << "{\"input_lipschitz\":" << fmt(r.input_lipschitz)
       << ",\"optimal_lipschitz\":" << fmt(r.optimal_lipschitz) << ",\"bracket\":["
       << fmt(r.bracket_lo) << ',' << fmt(r.bracket_hi) << "],\"ratio\":" << fmt(r.ratio)
       << ",\"total_sweeps\":" << r.total_sweeps << ",\"tol_bisect\":" << fmt(opt.tol_bisect)
       << ",\"tol_feas\":" << fmt(opt.tol_feas) << ",\"witness\":";
    write_assignment(os, inst, r.witness);
    os << "}";
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) fail("cannot write file: " + path);
    out << content;
}

}  // namespace lipext
