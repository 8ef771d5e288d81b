#include "rwinv_app/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>
#include <utility>
#include <vector>

#include <unistd.h>

#include "rwinv/error.hpp"

namespace rwinv::app {

using nlohmann::json;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char out[17];
  std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
  return out;
}

namespace {

const json& field(const json& doc, const char* name) {
  if (!doc.is_object() || !doc.contains(name)) {
    throw Error(ErrorCode::InvalidInput, std::string("instance is missing field \"") + name + "\"");
  }
  return doc.at(name);
}

int integer_field(const json& doc, const char* name) {
  const json& v = field(doc, name);
  if (!v.is_number_integer()) {
    throw Error(ErrorCode::InvalidInput, std::string("field \"") + name + "\" must be an integer");
  }
  return v.get<int>();
}

Eigen::VectorXd number_array(const json& arr, const std::string& what) {
  if (!arr.is_array()) throw Error(ErrorCode::InvalidInput, what + " must be an array of numbers");
  Eigen::VectorXd v(static_cast<Eigen::Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number()) throw Error(ErrorCode::InvalidInput, what + " must be an array of numbers");
    v[static_cast<Eigen::Index>(i)] = arr[i].get<double>();
  }
  return v;
}

}  // namespace

Instance parse_instance(const json& doc) {
  const int n = integer_field(doc, "n");
  const json& edge_list = field(doc, "edges");
  if (!edge_list.is_array()) throw Error(ErrorCode::InvalidInput, "field \"edges\" must be an array");
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (const json& e : edge_list) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
      throw Error(ErrorCode::InvalidInput, "each edge must be a pair of integers");
    }
    edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  Instance inst;
  inst.graph = Graph::build(n, edges, integer_field(doc, "v_in"), integer_field(doc, "v_out"));
  if (doc.contains("rho") && !doc.at("rho").is_null()) {
    Eigen::VectorXd rho = number_array(doc.at("rho"), "field \"rho\"");
    derived_weights(inst.graph, rho);  // validates length and positivity
    inst.rho = std::move(rho);
  }
  return inst;
}

Instance load_instance(const std::filesystem::path& path) {
  const std::string bytes = read_file(path);
  json doc;
  try {
    doc = json::parse(bytes);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::InvalidInput, path.string() + ": " + e.what());
  }
  Instance inst = parse_instance(doc);
  inst.hash = fnv1a_hex(bytes);
  return inst;
}

Eigen::VectorXd load_vector(const std::filesystem::path& path) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::InvalidInput, path.string() + ": " + e.what());
  }
  if (doc.is_array()) return number_array(doc, path.string());
  for (const char* key : {"tau", "r", "values"}) {
    if (doc.is_object() && doc.contains(key)) return number_array(doc.at(key), path.string());
  }
  throw Error(ErrorCode::InvalidInput, path.string() + ": expected an array or a \"tau\", \"r\" or \"values\" field");
}

json to_json(const Eigen::VectorXd& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

void write_atomic(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::InvalidInput, "cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw Error(ErrorCode::InvalidInput, "short write to " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::InvalidInput, "cannot rename onto " + path.string());
  }
}

}  // namespace rwinv::app
