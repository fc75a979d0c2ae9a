// Copyright 2026 The povmsim authors
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

#include "povmsim/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace povmsim {

namespace {

using Json = nlohmann::ordered_json;

Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (int r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (int c = 0; c < m.cols(); ++c) {
            row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const Json& j, int rows, int cols, const std::string& what) {
    if (!j.is_array() || static_cast<int>(j.size()) != rows) {
        throw IoError(what + ": expected " + std::to_string(rows) + " rows");
    }
    Matrix m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        const Json& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<int>(row.size()) != cols) {
            throw IoError(what + ": expected " + std::to_string(cols) + " columns");
        }
        for (int c = 0; c < cols; ++c) {
            const Json& cell = row[static_cast<std::size_t>(c)];
            if (!cell.is_array() || cell.size() != 2) {
                throw IoError(what + ": entries must be [re, im] pairs");
            }
            m(r, c) = Complex(cell[0].get<double>(), cell[1].get<double>());
        }
    }
    return m;
}

Json real_matrix_to_json(const Eigen::MatrixXd& m) {
    Json rows = Json::array();
    for (int r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXd real_matrix_from_json(const Json& j, const std::string& what) {
    if (!j.is_array() || j.empty()) throw IoError(what + ": expected a nonempty array");
    const int rows = static_cast<int>(j.size());
    const int cols = static_cast<int>(j[0].size());
    Eigen::MatrixXd m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        const Json& row = j[static_cast<std::size_t>(r)];
        if (static_cast<int>(row.size()) != cols) throw IoError(what + ": ragged rows");
        for (int c = 0; c < cols; ++c) m(r, c) = row[static_cast<std::size_t>(c)].get<double>();
    }
    return m;
}

Json povm_to_json(const Povm& m) {
    Json j;
    j["dim"] = m.dim;
    Json labels = Json::array();
    for (int i = 0; i < m.outcomes(); ++i) labels.push_back(m.label(i));
    j["labels"] = std::move(labels);
    Json effects = Json::array();
    for (const auto& e : m.effects) effects.push_back(matrix_to_json(e));
    j["effects"] = std::move(effects);
    return j;
}

Povm povm_from_json(const Json& j) {
    Povm m;
    if (!j.contains("dim") || !j.contains("effects")) {
        throw IoError("POVM document needs 'dim' and 'effects'");
    }
    m.dim = j["dim"].get<int>();
    if (m.dim < 1) throw IoError("POVM dim must be positive");
    for (const Json& e : j["effects"]) {
        m.effects.push_back(matrix_from_json(e, m.dim, m.dim, "effect"));
    }
    if (j.contains("labels")) {
        for (const Json& l : j["labels"]) m.labels.push_back(l.get<std::string>());
        if (!m.labels.empty() && m.labels.size() != m.effects.size()) {
            throw IoError("label count differs from effect count");
        }
    }
    return m;
}

Json witness_to_json(const SpWitness& w) {
    Json j;
    j["target_dim"] = w.target_dim;
    Json comps = Json::array();
    for (const auto& c : w.components) {
        Json jc;
        jc["weight"] = c.weight;
        jc["projective"] = povm_to_json(c.projective);
        jc["postproc"] = real_matrix_to_json(c.postproc.m);
        comps.push_back(std::move(jc));
    }
    j["components"] = std::move(comps);
    return j;
}

SpWitness witness_from_json(const Json& j) {
    SpWitness w;
    if (!j.contains("target_dim") || !j.contains("components")) {
        throw IoError("witness document needs 'target_dim' and 'components'");
    }
    w.target_dim = j["target_dim"].get<int>();
    for (const Json& jc : j["components"]) {
        SpWitness::Component c;
        c.weight = jc.at("weight").get<double>();
        c.projective = povm_from_json(jc.at("projective"));
        c.postproc = StochasticMap{real_matrix_from_json(jc.at("postproc"), "postproc")};
        w.components.push_back(std::move(c));
    }
    return w;
}

Json partition_to_json(const Partition& p) {
    Json j;
    j["n"] = p.n;
    Json subsets = Json::array();
    for (const auto& s : p.subsets) {
        Json block = Json::array();
        for (int i : s) block.push_back(i + 1);  // 1-based on disk
        subsets.push_back(std::move(block));
    }
    j["subsets"] = std::move(subsets);
    return j;
}

Partition partition_from_json(const Json& j) {
    Partition p;
    p.n = j.at("n").get<int>();
    for (const Json& block : j.at("subsets")) {
        std::vector<int> s;
        for (const Json& i : block) s.push_back(i.get<int>() - 1);
        p.subsets.push_back(std::move(s));
    }
    p.require_valid();
    return p;
}

Json parse(const std::string& text) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) throw IoError("malformed JSON document");
    return j;
}

}  // namespace

std::string write_povm(const Povm& m) { return povm_to_json(m).dump(2) + "\n"; }

Povm read_povm(const std::string& text) { return povm_from_json(parse(text)); }

std::string write_partition(const Partition& p) { return partition_to_json(p).dump(2) + "\n"; }

Partition read_partition(const std::string& text) { return partition_from_json(parse(text)); }

std::string write_witness(const SpWitness& w) { return witness_to_json(w).dump(2) + "\n"; }

SpWitness read_witness(const std::string& text) { return witness_from_json(parse(text)); }

std::string write_dilation(const NaimarkDilation& d) {
    Json j;
    j["base_dim"] = d.base_dim;
    j["ambient_dim"] = d.ambient_dim;
    j["layout"] = d.layout == DilationLayout::kTensor ? "tensor" : "block";
    if (d.layout == DilationLayout::kTensor) j["ancilla_dim"] = d.ancilla_dim;
    j["projective"] = povm_to_json(d.projective);
    j["coarse"] = real_matrix_to_json(d.coarse.m);
    return j.dump(2) + "\n";
}

NaimarkDilation read_dilation(const std::string& text) {
    const Json j = parse(text);
    NaimarkDilation d;
    d.base_dim = j.at("base_dim").get<int>();
    d.ambient_dim = j.at("ambient_dim").get<int>();
    const std::string layout = j.at("layout").get<std::string>();
    if (layout == "tensor") {
        d.layout = DilationLayout::kTensor;
        d.ancilla_dim = j.at("ancilla_dim").get<int>();
    } else if (layout == "block") {
        d.layout = DilationLayout::kBlock;
    } else {
        throw IoError("unknown dilation layout '" + layout + "'");
    }
    d.projective = povm_from_json(j.at("projective"));
    d.coarse = StochasticMap{real_matrix_from_json(j.at("coarse"), "coarse")};
    return d;
}

std::string write_state(const Matrix& rho) {
    Json j;
    j["dim"] = static_cast<int>(rho.rows());
    j["rho"] = matrix_to_json(rho);
    return j.dump(2) + "\n";
}

Matrix read_state(const std::string& text) {
    const Json j = parse(text);
    const int d = j.at("dim").get<int>();
    return matrix_from_json(j.at("rho"), d, d, "rho");
}

std::string write_certificate(const SpCertificate& c) {
    Json j;
    j["input"] = povm_to_json(c.input);
    j["c_found"] = c.c_found;
    j["witness"] = witness_to_json(c.witness);
    Json diag;
    diag["delta"] = c.diagnostics.delta;
    diag["eps"] = c.diagnostics.eps;
    diag["flatness"] = c.diagnostics.flatness;
    diag["partition"] = partition_to_json(c.diagnostics.partition);
    diag["q_found"] = c.diagnostics.q_found;
    diag["t_np_found"] = c.diagnostics.t_np_found;
    diag["search_mode"] = c.diagnostics.search_mode;
    Json ks;
    ks["groups_ok"] = c.diagnostics.groups_ok;
    ks["lambda_c5_ok"] = c.diagnostics.ks_c5_lambda_ok;
    ks["q_c5_ok"] = c.diagnostics.q_c5_ok;
    ks["guarantee"] = c.diagnostics.ks_c5_guarantee;
    diag["ks_check"] = std::move(ks);
    diag["composition_deviation"] = c.diagnostics.composition_deviation;
    diag["min_magnitude"] = c.diagnostics.min_magnitude;
    diag["verified"] = c.verified;
    diag["verifier_deviation"] = c.verifier_deviation;
    j["diagnostics"] = std::move(diag);
    return j.dump(2) + "\n";
}

SpCertificate read_certificate(const std::string& text) {
    const Json j = parse(text);
    SpCertificate c;
    c.input = povm_from_json(j.at("input"));
    c.c_found = j.at("c_found").get<double>();
    c.witness = witness_from_json(j.at("witness"));
    const Json& diag = j.at("diagnostics");
    c.diagnostics.delta = diag.at("delta").get<double>();
    c.diagnostics.eps = diag.at("eps").get<double>();
    c.diagnostics.flatness = diag.at("flatness").get<double>();
    c.diagnostics.partition = partition_from_json(diag.at("partition"));
    c.diagnostics.q_found = diag.at("q_found").get<double>();
    c.diagnostics.t_np_found = diag.at("t_np_found").get<double>();
    c.diagnostics.search_mode = diag.at("search_mode").get<std::string>();
    const Json& ks = diag.at("ks_check");
    c.diagnostics.groups_ok = ks.at("groups_ok").get<bool>();
    c.diagnostics.ks_c5_lambda_ok = ks.at("lambda_c5_ok").get<bool>();
    c.diagnostics.q_c5_ok = ks.at("q_c5_ok").get<bool>();
    c.diagnostics.ks_c5_guarantee = ks.at("guarantee").get<bool>();
    c.diagnostics.composition_deviation = diag.at("composition_deviation").get<double>();
    c.diagnostics.min_magnitude = diag.at("min_magnitude").get<double>();
    c.verified = diag.at("verified").get<bool>();
    c.verifier_deviation = diag.at("verifier_deviation").get<double>();
    return c;
}

bool looks_like_certificate(const std::string& text) {
    const Json j = parse(text);
    return j.is_object() && j.contains("c_found") && j.contains("witness");
}

bool looks_like_dilation(const std::string& text) {
    const Json j = parse(text);
    return j.is_object() && j.contains("ambient_dim") && j.contains("coarse");
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << text;
}

}  // namespace povmsim
