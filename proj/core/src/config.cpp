// Copyright 2026 The xyzlind Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "xyzlind/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "xyzlind/errors.hpp"

namespace xyzlind {

using nlohmann::json;

namespace {

// 1-based line of the first occurrence of "key" in the source text, or 0.
int line_of(std::string_view text, std::string_view key) {
    const std::string needle = "\"" + std::string(key) + "\"";
    const auto pos = text.find(needle);
    if (pos == std::string_view::npos) return 0;
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + pos, '\n'));
}

[[noreturn]] void fail(std::string_view text, std::string_view key, const std::string& message) {
    const int line = line_of(text, key);
    std::string where = line > 0 ? "line " + std::to_string(line) + ": " : "";
    throw Error(ErrorKind::Config, where + "'" + std::string(key) + "': " + message);
}

void reject_unknown(std::string_view text, const json& obj, const std::set<std::string>& known,
                    std::string_view scope) {
    for (const auto& [key, value] : obj.items()) {
        if (!known.count(key)) fail(text, key, "unknown key in " + std::string(scope));
    }
}

template <typename T>
T get(std::string_view text, const json& obj, const std::string& key) {
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception& e) {
        fail(text, key, std::string("wrong type (") + e.what() + ")");
    }
}

Method parse_method(std::string_view text, const std::string& value) {
    for (auto m : {Method::Rk4, Method::Jump, Method::Homodyne, Method::Spectrum}) {
        if (value == to_string(m)) return m;
    }
    fail(text, "method", "unknown method '" + value + "' (rk4, jump, homodyne, spectrum)");
}

}  // namespace

std::string_view to_string(Method m) noexcept {
    switch (m) {
        case Method::Rk4: return "rk4";
        case Method::Jump: return "jump";
        case Method::Homodyne: return "homodyne";
        case Method::Spectrum: return "spectrum";
    }
    return "?";
}

Direction ExperimentConfig::resolved_initial_state() const noexcept {
    if (initial_state) return *initial_state;
    return method == Method::Homodyne ? Direction::MinusZ : Direction::PlusX;
}

void ExperimentConfig::validate() const {
    auto bad = [](const std::string& key, const std::string& msg) {
        throw Error(ErrorKind::Config, "'" + key + "': " + msg);
    };
    if (lattice.lx < 1 || lattice.ly < 1) bad("lattice", "lx and ly must be positive");
    if (n_sites() > kDefaultMaxSites) bad("lattice", "more than 16 sites");
    couplings.validate();
    if (!(dt > 0.0)) bad("dt", "must be positive");
    if (!(t_max > 0.0)) bad("t_max", "must be positive");
    if (t_s && !(*t_s >= 0.0)) bad("t_s", "must be non-negative");
    if (record_every == 0) bad("record_every", "must be at least 1");
    if ((method == Method::Jump || method == Method::Homodyne) && n_traj == 0) {
        bad("n_traj", "stochastic methods need n_traj >= 1");
    }
    if (!(fit.t_start >= 0.0)) bad("fit.t_start", "must be non-negative");
    if (fit.t_end && !(*fit.t_end > fit.t_start)) bad("fit.t_end", "must exceed fit.t_start");
    if (!(fit.noise_k > 0.0)) bad("fit.noise_k", "must be positive");
    if (n_bins < 2) bad("n_bins", "must be at least 2");
    for (double jy : jy_values) {
        if (!std::isfinite(jy)) bad("jy_values", "must be finite");
    }
}

ExperimentConfig parse_config(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::Config, std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw Error(ErrorKind::Config, "configuration must be a JSON object");
    reject_unknown(text, doc,
                   {"name", "lattice", "couplings", "method", "initial_state", "dt", "t_max", "t_s",
                    "n_traj", "base_seed", "record_every", "fit", "n_bins", "exact_gap", "threads",
                    "jy_values", "output_dir"},
                   "configuration");

    ExperimentConfig c;
    if (doc.contains("name")) c.name = get<std::string>(text, doc, "name");
    if (doc.contains("lattice")) {
        const json& l = doc.at("lattice");
        if (!l.is_object()) fail(text, "lattice", "must be an object {lx, ly, periodic}");
        reject_unknown(text, l, {"lx", "ly", "periodic", "bond_multiplicity"}, "lattice");
        if (l.contains("lx")) c.lattice.lx = get<int>(text, l, "lx");
        if (l.contains("ly")) c.lattice.ly = get<int>(text, l, "ly");
        if (l.contains("periodic")) c.lattice.periodic = get<bool>(text, l, "periodic");
        if (l.contains("bond_multiplicity")) {
            const auto m = get<std::string>(text, l, "bond_multiplicity");
            if (m == "deduplicate") {
                c.lattice.multiplicity = BondMultiplicity::Deduplicate;
            } else if (m == "count_wraps") {
                c.lattice.multiplicity = BondMultiplicity::CountWraps;
            } else {
                fail(text, "bond_multiplicity", "expected 'deduplicate' or 'count_wraps'");
            }
        }
    }
    if (doc.contains("couplings")) {
        const json& k = doc.at("couplings");
        if (!k.is_object()) fail(text, "couplings", "must be an object {jx, jy, jz, gamma}");
        reject_unknown(text, k, {"jx", "jy", "jz", "gamma"}, "couplings");
        if (k.contains("jx")) c.couplings.jx = get<double>(text, k, "jx");
        if (k.contains("jy")) c.couplings.jy = get<double>(text, k, "jy");
        if (k.contains("jz")) c.couplings.jz = get<double>(text, k, "jz");
        if (k.contains("gamma")) c.couplings.gamma = get<double>(text, k, "gamma");
    }
    if (doc.contains("method")) c.method = parse_method(text, get<std::string>(text, doc, "method"));
    if (doc.contains("initial_state")) {
        try {
            c.initial_state = parse_direction(get<std::string>(text, doc, "initial_state"));
        } catch (const Error& e) {
            fail(text, "initial_state", e.message());
        }
    }
    if (doc.contains("dt")) c.dt = get<double>(text, doc, "dt");
    if (doc.contains("t_max")) c.t_max = get<double>(text, doc, "t_max");
    if (doc.contains("t_s") && !doc.at("t_s").is_null()) c.t_s = get<double>(text, doc, "t_s");
    if (doc.contains("n_traj")) c.n_traj = get<std::size_t>(text, doc, "n_traj");
    if (doc.contains("base_seed")) c.base_seed = get<std::uint64_t>(text, doc, "base_seed");
    if (doc.contains("record_every")) c.record_every = get<std::size_t>(text, doc, "record_every");
    if (doc.contains("fit")) {
        const json& f = doc.at("fit");
        if (!f.is_object()) fail(text, "fit", "must be an object {t_start, t_end, noise_k}");
        reject_unknown(text, f, {"t_start", "t_end", "noise_k"}, "fit");
        if (f.contains("t_start")) c.fit.t_start = get<double>(text, f, "t_start");
        if (f.contains("t_end") && !f.at("t_end").is_null()) c.fit.t_end = get<double>(text, f, "t_end");
        if (f.contains("noise_k")) c.fit.noise_k = get<double>(text, f, "noise_k");
    }
    if (doc.contains("n_bins")) c.n_bins = get<std::size_t>(text, doc, "n_bins");
    if (doc.contains("exact_gap")) c.exact_gap = get<bool>(text, doc, "exact_gap");
    if (doc.contains("threads")) c.threads = get<unsigned>(text, doc, "threads");
    if (doc.contains("jy_values")) c.jy_values = get<std::vector<double>>(text, doc, "jy_values");
    if (doc.contains("output_dir")) c.output_dir = get<std::string>(text, doc, "output_dir");

    try {
        c.validate();
    } catch (const Error& e) {
        // Attach the line of the key named in the message when we can find it.
        const std::string msg = e.message();
        const auto q1 = msg.find('\'');
        const auto q2 = q1 == std::string::npos ? q1 : msg.find('\'', q1 + 1);
        if (q2 != std::string::npos) {
            std::string key = msg.substr(q1 + 1, q2 - q1 - 1);
            if (const auto dot = key.rfind('.'); dot != std::string::npos) key = key.substr(dot + 1);
            if (const int line = line_of(text, key); line > 0) {
                throw Error(ErrorKind::Config, "line " + std::to_string(line) + ": " + msg);
            }
        }
        throw;
    }
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Config, "cannot open configuration file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_config(buffer.str());
    } catch (const Error& e) {
        throw Error(ErrorKind::Config, path + ": " + e.message());
    }
}

std::string serialize_config(const ExperimentConfig& c, bool pretty) {
    json doc;
    doc["name"] = c.name;
    doc["lattice"] = {{"lx", c.lattice.lx},
                      {"ly", c.lattice.ly},
                      {"periodic", c.lattice.periodic},
                      {"bond_multiplicity", c.lattice.multiplicity == BondMultiplicity::Deduplicate
                                                ? "deduplicate"
                                                : "count_wraps"}};
    doc["couplings"] = {{"jx", c.couplings.jx},
                        {"jy", c.couplings.jy},
                        {"jz", c.couplings.jz},
                        {"gamma", c.couplings.gamma}};
    doc["method"] = std::string(to_string(c.method));
    if (c.initial_state) doc["initial_state"] = std::string(to_string(*c.initial_state));
    doc["dt"] = c.dt;
    doc["t_max"] = c.t_max;
    doc["t_s"] = c.t_s ? json(*c.t_s) : json(nullptr);
    doc["n_traj"] = c.n_traj;
    doc["base_seed"] = c.base_seed;
    doc["record_every"] = c.record_every;
    doc["fit"] = {{"t_start", c.fit.t_start},
                  {"t_end", c.fit.t_end ? json(*c.fit.t_end) : json(nullptr)},
                  {"noise_k", c.fit.noise_k}};
    doc["n_bins"] = c.n_bins;
    doc["exact_gap"] = c.exact_gap;
    doc["threads"] = c.threads;
    doc["jy_values"] = c.jy_values;
    doc["output_dir"] = c.output_dir;
    return doc.dump(pretty ? 2 : -1);
}

ExperimentConfig preset(std::string_view name) {
    ExperimentConfig c;
    c.name = std::string(name);
    if (name == "paper-1d") {
        c.lattice = {4, 1, true, BondMultiplicity::Deduplicate};
        c.couplings = {1.8, 2.2, 2.0, 1.0};
        c.t_max = 40.0;
        c.jy_values = {1.6, 1.8, 2.0, 2.2, 2.4, 2.6, 2.8};
    } else if (name == "paper-2d") {
        c.lattice = {2, 2, true, BondMultiplicity::Deduplicate};
        c.couplings = {0.9, 1.1, 1.0, 1.0};
        c.t_max = 50.0;
        c.jy_values = {0.9, 1.0, 1.05, 1.1, 1.15, 1.2, 1.3, 1.4, 1.5, 1.6};
    } else {
        throw Error(ErrorKind::Config, "unknown preset '" + std::string(name) +
                                           "' (available: paper-1d, paper-2d)");
    }
    return c;
}

std::vector<std::string> preset_names() { return {"paper-1d", "paper-2d"}; }

LatticeGeometry make_geometry(const LatticeSpec& spec) {
    if (spec.lx == 1 && spec.ly == 1) return single_site();
    if (spec.ly == 1) return build_chain(spec.lx, spec.periodic, spec.multiplicity);
    if (spec.lx == 1) return build_chain(spec.ly, spec.periodic, spec.multiplicity);
    return build_rect(spec.lx, spec.ly, spec.periodic, spec.multiplicity);
}

}  // namespace xyzlind
