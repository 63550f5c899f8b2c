#include "lnsum/problem_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lnsum/errors.hpp"

namespace lnsum {

namespace {

using nlohmann::json;

Eigen::VectorXd parse_vector(const json& arr, const char* field) {
    if (!arr.is_array() || arr.empty()) {
        std::ostringstream os;
        os << "field '" << field << "' must be a non-empty array";
        throw ValidationError(os.str());
    }
    Eigen::VectorXd v(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) {
        if (!arr[i].is_number()) {
            std::ostringstream os;
            os << "field '" << field << "' entry " << i << " is not a number";
            throw ValidationError(os.str());
        }
        v(static_cast<Eigen::Index>(i)) = arr[i].get<double>();
    }
    return v;
}

Eigen::MatrixXd parse_matrix(const json& arr, const char* field, Eigen::Index n) {
    if (!arr.is_array() || static_cast<Eigen::Index>(arr.size()) != n) {
        std::ostringstream os;
        os << "field '" << field << "' must be an array of " << n << " rows";
        throw ValidationError(os.str());
    }
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& row = arr[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
            std::ostringstream os;
            os << "field '" << field << "' row " << i << " must have " << n << " entries";
            throw ValidationError(os.str());
        }
        for (Eigen::Index j = 0; j < n; ++j)
            m(i, j) = row[static_cast<std::size_t>(j)].get<double>();
    }
    return m;
}

} // namespace

ProblemFile parse_problem(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("problem file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw ValidationError("problem file must be a JSON object");
    for (const char* required : {"means", "cov", "weights"})
        if (!doc.contains(required)) {
            std::ostringstream os;
            os << "problem file is missing field '" << required << "'";
            throw ValidationError(os.str());
        }

    ProblemFile pf;
    pf.spec.means = parse_vector(doc["means"], "means");
    pf.spec.weights = parse_vector(doc["weights"], "weights");
    pf.spec.cov = parse_matrix(doc["cov"], "cov", pf.spec.means.size());
    validate(pf.spec);

    if (doc.contains("t")) {
        const auto& t = doc["t"];
        if (!t.is_array() || t.size() != 2)
            throw ValidationError("field 't' must be an array of two negative values");
        pf.t = TPair{t[0].get<double>(), t[1].get<double>()};
    }
    if (doc.contains("sim")) {
        const auto& sim = doc["sim"];
        if (!sim.is_object())
            throw ValidationError("field 'sim' must be an object");
        SimConfig cfg;
        if (sim.contains("n"))
            cfg.sample_size = sim["n"].get<std::int64_t>();
        if (sim.contains("seed"))
            cfg.seed = sim["seed"].get<std::uint64_t>();
        if (sim.contains("threads"))
            cfg.threads = sim["threads"].get<int>();
        pf.sim = cfg;
    }
    if (doc.contains("grid")) {
        const auto& grid = doc["grid"];
        if (grid.is_array()) {
            const Eigen::VectorXd v = parse_vector(grid, "grid");
            pf.grid_domain = std::vector<double>(v.data(), v.data() + v.size());
        } else if (grid.is_object() && grid.contains("h") && grid.contains("k")) {
            pf.grid_domain = default_grid(grid["h"].get<double>(), grid["k"].get<int>());
        } else {
            throw ValidationError("field 'grid' must be a domain array or {\"h\":..., \"k\":...}");
        }
    }
    return pf;
}

ProblemFile load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        std::ostringstream os;
        os << "cannot open problem file: " << path;
        throw ValidationError(os.str());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_problem(buf.str());
}

} // namespace lnsum
