#include "matgeom/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "matgeom/errors.hpp"

namespace matgeom {

void write_table(std::ostream& os, const MapTable& table) {
    const auto& s = table.spec();
    os << s.q() << ' ' << s.m << ' ' << s.n << '\n';
    for (auto v : table.image()) os << v << '\n';
}

MapTable read_table(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw ParseError("table: missing header");
    std::istringstream header(line);
    int q = 0, m = 0, n = 0;
    std::string extra;
    if (!(header >> q >> m >> n) || (header >> extra) || m < 1 || n < 1)
        throw ParseError("table: header must be 'q m n' with positive m, n");
    SpaceSpec spec;
    std::uint64_t count = 0;
    try {
        spec = {Field::make(q), m, n};
        count = spec.size();
    } catch (const std::exception& e) {
        throw ParseError(std::string("table: ") + e.what());
    }
    if (count > UINT32_MAX) throw ParseError("table: space too large");

    std::vector<std::uint32_t> image;
    image.reserve(count);
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        std::istringstream ls(line);
        long long v = 0;
        if (!(ls >> v)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            throw ParseError("table: line " + std::to_string(lineno) + " is not an integer");
        }
        if (ls >> extra) throw ParseError("table: line " + std::to_string(lineno) + " has trailing tokens");
        if (v < 0 || static_cast<std::uint64_t>(v) >= count)
            throw ParseError("table: line " + std::to_string(lineno) + " index out of range");
        if (image.size() == count) throw ParseError("table: too many entries");
        image.push_back(static_cast<std::uint32_t>(v));
    }
    if (image.size() != count)
        throw ParseError("table: expected " + std::to_string(count) + " entries, found " + std::to_string(image.size()));
    try {
        return MapTable(spec, std::move(image));
    } catch (const PreconditionError& e) {
        throw ParseError(std::string("table: ") + e.what());
    }
}

void write_table_file(const std::string& path, const MapTable& table) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    write_table(os, table);
}

MapTable read_table_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ParseError("cannot open " + path);
    return read_table(is);
}

Json to_json(const Matrix& a) {
    Json arr = Json::array();
    for (Elem e : a.entries()) arr.push_back(static_cast<int>(e));
    return arr;
}

Json to_json(const StandardPreserver& f) {
    const auto spec = f.spec();
    Json doc;
    doc["q"] = spec.q();
    doc["m"] = spec.m;
    doc["n"] = spec.n;
    doc["modulus"] = spec.field->modulus();
    doc["T"] = to_json(f.T);
    doc["S"] = to_json(f.S);
    doc["R"] = to_json(f.R);
    doc["sigma"] = f.sigma.frobenius_power;
    doc["transposed"] = f.transposed;
    return doc;
}

namespace {

Matrix matrix_field(const Json& doc, const char* key, const FieldPtr& field, int rows, int cols) {
    if (!doc.contains(key) || !doc[key].is_array()) throw ParseError(std::string("decomposition: missing array ") + key);
    const auto& arr = doc[key];
    if (arr.size() != static_cast<std::size_t>(rows) * cols)
        throw ParseError(std::string("decomposition: wrong entry count for ") + key);
    std::vector<Elem> entries;
    for (const auto& e : arr) {
        if (!e.is_number_integer() || !field->contains(e.get<int>()))
            throw ParseError(std::string("decomposition: bad entry in ") + key);
        entries.push_back(static_cast<Elem>(e.get<int>()));
    }
    return Matrix(field, rows, cols, std::move(entries));
}

int int_field(const Json& doc, const char* key) {
    if (!doc.contains(key) || !doc[key].is_number_integer()) throw ParseError(std::string("decomposition: missing integer ") + key);
    return doc[key].get<int>();
}

}  // namespace

StandardPreserver preserver_from_json(const Json& doc) {
    if (!doc.is_object()) throw ParseError("decomposition: expected an object");
    const int q = int_field(doc, "q");
    const int m = int_field(doc, "m");
    const int n = int_field(doc, "n");
    if (m < 1 || n < 1) throw ParseError("decomposition: bad shape");
    FieldPtr field;
    try {
        field = Field::make(q);
    } catch (const PreconditionError& e) {
        throw ParseError(std::string("decomposition: ") + e.what());
    }
    if (doc.contains("modulus") && doc["modulus"] != Json(field->modulus()))
        throw ParseError("decomposition: modulus does not match the canonical modulus for q");
    StandardPreserver f;
    f.T = matrix_field(doc, "T", field, m, m);
    f.S = matrix_field(doc, "S", field, n, n);
    f.R = matrix_field(doc, "R", field, m, n);
    f.sigma = {field, int_field(doc, "sigma")};
    if (!doc.contains("transposed") || !doc["transposed"].is_boolean())
        throw ParseError("decomposition: missing boolean transposed");
    f.transposed = doc["transposed"].get<bool>();
    try {
        validate(f);
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("decomposition: ") + e.what());
    }
    return f;
}

}  // namespace matgeom
