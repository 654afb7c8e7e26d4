#include "framelab/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "framelab/errors.hpp"

namespace framelab {

using nlohmann::json;

namespace {

class Violations {
public:
    void add(const std::string& path, const std::string& msg) { items_.push_back(path + ": " + msg); }
    bool empty() const { return items_.empty(); }
    [[noreturn]] void raise() const {
        std::string all = "invalid config";
        for (const std::string& s : items_) all += "\n  " + s;
        throw parse_error(all);
    }
    void raise_if_any() const {
        if (!empty()) raise();
    }

private:
    std::vector<std::string> items_;
};

void reject_unknown(const json& obj, const std::string& path,
                    std::initializer_list<const char*> known, Violations& v) {
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (const char* k : known)
            if (key == k) ok = true;
        if (!ok) v.add(path + "/" + key, "unknown key");
    }
}

bool get_number(const json& obj, const std::string& path, const char* key, double& out,
                Violations& v) {
    if (!obj.contains(key)) return false;
    const json& val = obj.at(key);
    if (!val.is_number()) {
        v.add(path + "/" + key, "must be a number");
        return false;
    }
    out = val.get<double>();
    return true;
}

bool get_int(const json& obj, const std::string& path, const char* key, long long& out,
             Violations& v) {
    if (!obj.contains(key)) return false;
    const json& val = obj.at(key);
    if (!val.is_number_integer()) {
        v.add(path + "/" + key, "must be an integer");
        return false;
    }
    out = val.get<long long>();
    return true;
}

bool get_string(const json& obj, const std::string& path, const char* key, std::string& out,
                Violations& v) {
    if (!obj.contains(key)) return false;
    const json& val = obj.at(key);
    if (!val.is_string()) {
        v.add(path + "/" + key, "must be a string");
        return false;
    }
    out = val.get<std::string>();
    return true;
}

bool get_vector(const json& obj, const std::string& path, const char* key,
                std::vector<double>& out, Violations& v) {
    if (!obj.contains(key)) return false;
    const json& val = obj.at(key);
    if (!val.is_array()) {
        v.add(path + "/" + key, "must be an array of numbers");
        return false;
    }
    out.clear();
    for (const json& e : val) {
        if (!e.is_number()) {
            v.add(path + "/" + key, "must be an array of numbers");
            return false;
        }
        out.push_back(e.get<double>());
    }
    return true;
}

}  // namespace

ConvexBody ExperimentConfig::BodySpec::make() const {
    if (kind == "ball") {
        const double r = semi_axes.empty() ? 1.0 : semi_axes.front();
        return ConvexBody::ball(dim, r);
    }
    return ConvexBody::ellipsoid(semi_axes);
}

PointSet ExperimentConfig::PointSetSpec::make(int dim) const {
    PointSet base = [&] {
        if (generator == "lattice") return lattice(dim, spacing, extent);
        if (generator == "progression")
            return progression_line_set(dim, step, offset, count,
                                        std::span<const double>(direction));
        if (generator == "bessel_zero") return bessel_zero_line_set(dim, count);
        return load_points(path);
    }();
    if (perturb) {
        const double mag = perturb->magnitude;
        return framelab::perturb(base, [mag](double) { return mag; }, perturb->seed);
    }
    return base;
}

ExperimentConfig parse_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw parse_error(std::string("config is not valid JSON: ") + e.what());
    }

    Violations v;
    if (!root.is_object()) {
        v.add("", "config must be a JSON object");
        v.raise();
    }
    reject_unknown(root, "", {"body", "pointset", "analysis", "output", "seed", "tolerances"}, v);

    ExperimentConfig cfg;

    // body
    if (!root.contains("body")) {
        v.add("/body", "required");
    } else if (!root.at("body").is_object()) {
        v.add("/body", "must be an object");
    } else {
        const json& body = root.at("body");
        reject_unknown(body, "/body", {"kind", "dim", "semi_axes"}, v);
        get_string(body, "/body", "kind", cfg.body.kind, v);
        if (cfg.body.kind != "ball" && cfg.body.kind != "ellipsoid")
            v.add("/body/kind", "must be \"ball\" or \"ellipsoid\"");
        long long dim = cfg.body.dim;
        if (!get_int(body, "/body", "dim", dim, v) && !body.contains("dim"))
            v.add("/body/dim", "required");
        if (dim < 2 || dim > 16) v.add("/body/dim", "must be an integer in [2, 16]");
        else cfg.body.dim = static_cast<int>(dim);
        if (get_vector(body, "/body", "semi_axes", cfg.body.semi_axes, v)) {
            if (static_cast<long long>(cfg.body.semi_axes.size()) != dim)
                v.add("/body/semi_axes", "must list exactly dim semi-axes");
            for (double a : cfg.body.semi_axes)
                if (!(a > 0.0)) v.add("/body/semi_axes", "semi-axes must be > 0");
            if (cfg.body.kind == "ball")
                for (double a : cfg.body.semi_axes)
                    if (a != cfg.body.semi_axes.front())
                        v.add("/body/semi_axes", "ball semi-axes must all be equal");
        } else if (cfg.body.kind == "ellipsoid") {
            v.add("/body/semi_axes", "required for an ellipsoid");
        }
    }

    // pointset
    if (!root.contains("pointset")) {
        v.add("/pointset", "required");
    } else if (!root.at("pointset").is_object()) {
        v.add("/pointset", "must be an object");
    } else {
        const json& ps = root.at("pointset");
        reject_unknown(ps, "/pointset",
                       {"generator", "spacing", "extent", "step", "offset", "count", "direction",
                        "path", "perturb"},
                       v);
        if (!get_string(ps, "/pointset", "generator", cfg.pointset.generator, v))
            v.add("/pointset/generator", "required");
        const std::string& gen = cfg.pointset.generator;
        if (!gen.empty() && gen != "lattice" && gen != "progression" && gen != "bessel_zero" &&
            gen != "file")
            v.add("/pointset/generator",
                  "must be one of \"lattice\", \"progression\", \"bessel_zero\", \"file\"");
        get_number(ps, "/pointset", "spacing", cfg.pointset.spacing, v);
        if (!(cfg.pointset.spacing > 0.0)) v.add("/pointset/spacing", "must be > 0");
        get_number(ps, "/pointset", "extent", cfg.pointset.extent, v);
        if (!(cfg.pointset.extent > 0.0)) v.add("/pointset/extent", "must be > 0");
        get_number(ps, "/pointset", "step", cfg.pointset.step, v);
        if (!(cfg.pointset.step > 0.0)) v.add("/pointset/step", "must be > 0");
        get_number(ps, "/pointset", "offset", cfg.pointset.offset, v);
        long long count = cfg.pointset.count;
        get_int(ps, "/pointset", "count", count, v);
        if (count < 1 || count > static_cast<long long>(kMaxPoints))
            v.add("/pointset/count", "must be a positive integer within the point budget");
        else cfg.pointset.count = static_cast<int>(count);
        get_vector(ps, "/pointset", "direction", cfg.pointset.direction, v);
        get_string(ps, "/pointset", "path", cfg.pointset.path, v);
        if (gen == "file" && cfg.pointset.path.empty())
            v.add("/pointset/path", "required for the file generator");
        if (ps.contains("perturb")) {
            const json& pt = ps.at("perturb");
            if (!pt.is_object()) {
                v.add("/pointset/perturb", "must be an object");
            } else {
                reject_unknown(pt, "/pointset/perturb", {"magnitude", "seed"}, v);
                ExperimentConfig::PerturbSpec spec;
                get_number(pt, "/pointset/perturb", "magnitude", spec.magnitude, v);
                if (!(spec.magnitude >= 0.0)) v.add("/pointset/perturb/magnitude", "must be >= 0");
                long long seed = 0;
                get_int(pt, "/pointset/perturb", "seed", seed, v);
                spec.seed = static_cast<std::uint64_t>(seed);
                cfg.pointset.perturb = spec;
            }
        }
    }

    // analysis
    if (root.contains("analysis")) {
        if (!root.at("analysis").is_object()) {
            v.add("/analysis", "must be an object");
        } else {
            const json& an = root.at("analysis");
            reject_unknown(an, "/analysis", {"p", "delta", "j0", "shells"}, v);
            if (an.contains("p")) {
                const json& p = an.at("p");
                if (p.is_string() && p.get<std::string>() == "inf") {
                    cfg.analysis.p = kPInf;
                } else if (p.is_number()) {
                    cfg.analysis.p = p.get<double>();
                } else {
                    v.add("/analysis/p", "must be a number or \"inf\"");
                }
                if (!(cfg.analysis.p >= 1.0)) v.add("/analysis/p", "must be in [1, inf]");
            }
            get_number(an, "/analysis", "delta", cfg.analysis.delta, v);
            if (!(cfg.analysis.delta > 0.0 && cfg.analysis.delta <= 1.0))
                v.add("/analysis/delta", "must lie in (0, 1]");
            long long j0 = cfg.analysis.j0;
            get_int(an, "/analysis", "j0", j0, v);
            if (j0 < -40 || j0 > 40) v.add("/analysis/j0", "must be an integer in [-40, 40]");
            else cfg.analysis.j0 = static_cast<int>(j0);
            std::string shells = "euclidean";
            if (get_string(an, "/analysis", "shells", shells, v)) {
                if (shells == "euclidean") cfg.analysis.shells = ShellNorm::euclidean;
                else if (shells == "rho_star") cfg.analysis.shells = ShellNorm::rho_star;
                else v.add("/analysis/shells", "must be \"euclidean\" or \"rho_star\"");
            }
        }
    }

    // output
    if (root.contains("output")) {
        if (!root.at("output").is_object()) {
            v.add("/output", "must be an object");
        } else {
            const json& out = root.at("output");
            reject_unknown(out, "/output", {"csv", "json"}, v);
            get_string(out, "/output", "csv", cfg.output.csv, v);
            get_string(out, "/output", "json", cfg.output.json, v);
        }
    }

    // seed + tolerances
    long long seed = 0;
    get_int(root, "", "seed", seed, v);
    cfg.seed = static_cast<std::uint64_t>(seed);
    if (root.contains("tolerances")) {
        if (!root.at("tolerances").is_object()) {
            v.add("/tolerances", "must be an object");
        } else {
            const json& tol = root.at("tolerances");
            reject_unknown(tol, "/tolerances", {"eigen"}, v);
            get_number(tol, "/tolerances", "eigen", cfg.eigen_tol, v);
            if (!(cfg.eigen_tol > 0.0)) v.add("/tolerances/eigen", "must be > 0");
        }
    }

    v.raise_if_any();
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open config '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

}  // namespace framelab
