#include "geoequiv/graph_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "geoequiv/error.hpp"

namespace geoequiv::io {
namespace {

using nlohmann::json;

Eigen::VectorXd to_vector(const json& arr, const char* what) {
  if (!arr.is_array()) throw ParseError(std::string(what) + " must be an array");
  Eigen::VectorXd v(arr.size());
  for (std::size_t k = 0; k < arr.size(); ++k) {
    if (!arr[k].is_number()) throw ParseError(std::string(what) + " must contain numbers");
    v[k] = arr[k].get<double>();
  }
  return v;
}

json from_vector(const Eigen::VectorXd& v) {
  json arr = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) arr.push_back(v[k]);
  return arr;
}

}  // namespace

GeometricGraph parse_graph(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("graph document must be an object");
  if (!doc.contains("nodes")) throw ParseError("missing \"nodes\"");
  const bool directed = doc.value("directed", false);

  std::vector<Node> nodes;
  for (const json& jn : doc.at("nodes")) {
    if (!jn.is_object() || !jn.contains("x")) throw ParseError("node needs an \"x\" field");
    const Eigen::VectorXd x = to_vector(jn.at("x"), "x");
    if (x.size() != 3) throw ParseError("node position must have 3 components");
    Eigen::VectorXd h = jn.contains("h") ? to_vector(jn.at("h"), "h") : Eigen::VectorXd();
    nodes.push_back(Node{std::move(h), x});
  }
  std::vector<Edge> edges;
  if (doc.contains("edges")) {
    for (const json& je : doc.at("edges")) {
      if (!je.is_object() || !je.contains("i") || !je.contains("j")) {
        throw ParseError("edge needs \"i\" and \"j\"");
      }
      if (!je.at("i").is_number_integer() || !je.at("j").is_number_integer() ||
          je.at("i").get<long long>() < 0 || je.at("j").get<long long>() < 0) {
        throw ParseError("edge endpoints must be non-negative integers");
      }
      Eigen::VectorXd e = je.contains("e") ? to_vector(je.at("e"), "e") : Eigen::VectorXd();
      edges.push_back(Edge{je.at("i").get<std::size_t>(), je.at("j").get<std::size_t>(), std::move(e)});
    }
  }
  try {
    return GeometricGraph(std::move(nodes), std::move(edges), directed);
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
}

std::string dump_graph(const GeometricGraph& graph) {
  json doc;
  doc["directed"] = graph.directed();
  json nodes = json::array();
  for (const Node& n : graph.nodes()) {
    nodes.push_back({{"h", from_vector(n.h)}, {"x", {n.x[0], n.x[1], n.x[2]}}});
  }
  doc["nodes"] = std::move(nodes);
  json edges = json::array();
  for (const Edge& e : graph.edges()) {
    json je = {{"i", e.src}, {"j", e.dst}};
    if (e.e.size() > 0) je["e"] = from_vector(e.e);
    edges.push_back(std::move(je));
  }
  doc["edges"] = std::move(edges);
  return doc.dump(2);
}

GeometricGraph read_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_graph(ss.str());
}

void write_graph(const std::filesystem::path& path, const GeometricGraph& graph) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << dump_graph(graph) << '\n';
}

}  // namespace geoequiv::io
