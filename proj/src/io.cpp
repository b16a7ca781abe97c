#include "hpds/io.hpp"

#include "hpds/errors.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace hpds {

namespace {

using nlohmann::json;

const json& require(const json& obj, const char* key) {
    if (!obj.is_object() || !obj.contains(key)) throw InputError(std::string("model file: missing field '") + key + "'");
    return obj.at(key);
}

std::size_t as_size(const json& v, const char* what) {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
        throw InputError(std::string("model file: '") + what + "' must be a non-negative integer");
    return v.get<std::size_t>();
}

std::vector<double> as_numbers(const json& v, const char* what) {
    if (!v.is_array()) throw InputError(std::string("model file: '") + what + "' must be an array of numbers");
    std::vector<double> out;
    out.reserve(v.size());
    for (const json& e : v) {
        if (!e.is_number()) throw InputError(std::string("model file: '") + what + "' contains a non-number");
        out.push_back(e.get<double>());
    }
    return out;
}

json matrix_to_json(const Matrix& m) {
    json data = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) data.push_back(m(i, j));
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"data_row_major", std::move(data)}};
}

Matrix matrix_from_json(const json& v, const char* what) {
    const std::size_t rows = as_size(require(v, "rows"), "rows");
    const std::size_t cols = as_size(require(v, "cols"), "cols");
    const std::vector<double> data = as_numbers(require(v, "data_row_major"), what);
    if (data.size() != rows * cols)
        throw InputError(std::string("model file: ") + what + " has " + std::to_string(data.size()) + " entries, expected " +
                         std::to_string(rows * cols));
    Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = data[i * cols + j];
    return m;
}

std::optional<Matrix> optional_matrix(const json& doc, const char* key) {
    if (!doc.contains(key) || doc.at(key).is_null()) return std::nullopt;
    return matrix_from_json(doc.at(key), key);
}

}  // namespace

ModelFile parse_model(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw InputError(std::string("model file is not valid JSON: ") + e.what());
    }
    try {
        const int version = require(doc, "schema_version").get<int>();
        if (version != kSchemaVersion)
            throw InputError("unsupported model schema_version " + std::to_string(version));
        const std::size_t k = as_size(require(doc, "order"), "order");
        const std::size_t n = as_size(require(doc, "dim"), "dim");
        const json& t = require(doc, "dynamic_tensor");
        if (require(t, "layout").get<std::string>() != "first-index-fastest")
            throw InputError("model file: dynamic_tensor.layout must be 'first-index-fastest'");
        std::vector<std::size_t> dims;
        for (const json& d : require(t, "dims")) dims.push_back(as_size(d, "dims"));
        if (dims.size() != k) throw InputError("model file: dims length does not match order");
        for (std::size_t d : dims)
            if (d != n) throw InputError("model file: every tensor extent must equal dim");
        DenseTensor a(dims, as_numbers(require(t, "data"), "dynamic_tensor.data"));

        ModelFile file{InputOutputHpds(std::move(a), optional_matrix(doc, "input_matrix"), optional_matrix(doc, "output_matrix")),
                       {},
                       std::nullopt,
                       std::nullopt};
        if (doc.contains("metadata")) {
            const json& md = doc.at("metadata");
            file.metadata.name = md.value("name", "");
            file.metadata.generator = md.value("generator", "");
            file.metadata.rng = md.value("rng", "");
            if (md.contains("seed") && !md.at("seed").is_null()) file.metadata.seed = md.at("seed").get<std::uint64_t>();
        }
        if (doc.contains("projection")) {
            const json& p = doc.at("projection");
            file.V = optional_matrix(p, "V");
            file.Vk = optional_matrix(p, "Vk");
            if (file.V && static_cast<std::size_t>(file.V->cols()) != n)
                throw InputError("model file: projection V must have dim columns (n_full x r)");
        }
        return file;
    } catch (const json::exception& e) {
        throw InputError(std::string("model file: ") + e.what());
    }
}

ModelFile read_model(const std::filesystem::path& path) { return parse_model(read_text(path)); }

std::string serialize_model(const ModelFile& file) {
    const InputOutputHpds& m = file.model;
    const auto values = m.A().data();
    json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["order"] = m.k();
    doc["dim"] = m.n();
    doc["dynamic_tensor"] = {{"dims", m.A().dims()},
                             {"layout", "first-index-fastest"},
                             {"data", std::vector<double>(values.begin(), values.end())}};
    if (m.B()) doc["input_matrix"] = matrix_to_json(*m.B());
    if (m.C()) doc["output_matrix"] = matrix_to_json(*m.C());
    if (file.V || file.Vk) {
        json p = json::object();
        if (file.V) p["V"] = matrix_to_json(*file.V);
        if (file.Vk) p["Vk"] = matrix_to_json(*file.Vk);
        doc["projection"] = std::move(p);
    }
    json md = {{"name", file.metadata.name}, {"generator", file.metadata.generator}};
    md["seed"] = file.metadata.seed ? json(*file.metadata.seed) : json(nullptr);
    if (!file.metadata.rng.empty()) md["rng"] = file.metadata.rng;
    doc["metadata"] = std::move(md);
    return doc.dump(1) + "\n";
}

void write_model(const std::filesystem::path& path, const ModelFile& file) { write_text(path, serialize_model(file)); }

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
    const std::size_t n = traj.states.empty() ? 0 : static_cast<std::size_t>(traj.states.front().size());
    const std::size_t l = traj.outputs.empty() ? 0 : static_cast<std::size_t>(traj.outputs.front().size());
    out << 't';
    for (std::size_t i = 1; i <= n; ++i) out << ",x_" << i;
    for (std::size_t i = 1; i <= l; ++i) out << ",y_" << i;
    out << '\n';
    char buf[32];
    auto put = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out << buf;
    };
    for (std::size_t s = 0; s < traj.times.size(); ++s) {
        put(traj.times[s]);
        for (Eigen::Index i = 0; i < traj.states[s].size(); ++i) {
            out << ',';
            put(traj.states[s](i));
        }
        if (l > 0)
            for (Eigen::Index i = 0; i < traj.outputs[s].size(); ++i) {
                out << ',';
                put(traj.outputs[s](i));
            }
        out << '\n';
    }
}

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot open " + path.string() + " for writing");
    write_trajectory_csv(out, traj);
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot open " + path.string() + " for writing");
    out << text;
    if (!out) throw InputError("failed writing " + path.string());
}

}  // namespace hpds
