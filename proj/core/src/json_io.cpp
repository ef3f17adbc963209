#include "irk/json_io.hpp"

#include <fstream>

#include "irk/error.hpp"

namespace irk {

Perm perm_from_json(const Json& j, unsigned expected_degree) {
  if (!j.is_object()) fail(ErrorCode::usage, "permutation must be an object");
  if (!j.contains("n") || !j["n"].is_number_unsigned())
    fail(ErrorCode::usage, "permutation needs a positive \"n\"");
  unsigned n = j["n"].get<unsigned>();
  if (expected_degree && n != expected_degree)
    fail(ErrorCode::usage, "permutation degree mismatch");
  if (j.contains("images")) {
    const auto& arr = j["images"];
    if (!arr.is_array() || arr.size() != n)
      fail(ErrorCode::usage, "\"images\" must list all n image points");
    std::vector<std::uint8_t> img;
    img.reserve(n);
    for (const auto& v : arr) {
      unsigned x = v.get<unsigned>();
      if (x < 1 || x > n) fail(ErrorCode::usage, "image point out of 1..n");
      img.push_back(static_cast<std::uint8_t>(x - 1));
    }
    return Perm::from_images(std::move(img));
  }
  if (j.contains("cycles")) {
    std::vector<std::vector<Point>> cycles;
    for (const auto& c : j["cycles"]) {
      std::vector<Point> cyc;
      for (const auto& v : c) {
        unsigned x = v.get<unsigned>();
        if (x < 1 || x > n) fail(ErrorCode::usage, "cycle point out of 1..n");
        cyc.push_back(x - 1);
      }
      cycles.push_back(std::move(cyc));
    }
    return Perm::from_cycles(n, cycles);
  }
  fail(ErrorCode::usage, "permutation needs \"cycles\" or \"images\"");
}

Json perm_to_json(const Perm& p) {
  Json j;
  j["n"] = p.degree();
  Json cycles = Json::array();
  for (const auto& cyc : cycle_decomposition(p).cycles) {
    Json c = Json::array();
    for (Point x : cyc) c.push_back(x + 1);
    cycles.push_back(std::move(c));
  }
  j["cycles"] = std::move(cycles);
  return j;
}

Group group_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("n"))
    fail(ErrorCode::usage, "group file needs \"n\" and \"generators\"");
  unsigned n = j["n"].get<unsigned>();
  std::vector<Perm> gens;
  if (j.contains("generators"))
    for (const auto& pj : j["generators"]) gens.push_back(perm_from_json(pj, n));
  Group g = Group::generate(std::move(gens), n);
  if (j.contains("name")) g.set_name(j["name"].get<std::string>());
  return g;
}

Json group_to_json(const Group& g) {
  Json j;
  j["n"] = g.degree();
  Json gens = Json::array();
  for (const auto& p : g.generators()) gens.push_back(perm_to_json(p));
  j["generators"] = std::move(gens);
  if (!g.name().empty()) j["name"] = g.name();
  return j;
}

std::vector<Perm> perm_set_from_json(const Json& j, unsigned* degree_out) {
  if (!j.is_object() || !j.contains("n"))
    fail(ErrorCode::usage, "set file needs \"n\" and \"elements\"");
  unsigned n = j["n"].get<unsigned>();
  const char* key = j.contains("elements") ? "elements" : "generators";
  if (!j.contains(key)) fail(ErrorCode::usage, "set file needs \"elements\"");
  std::vector<Perm> elems;
  for (const auto& pj : j[key]) elems.push_back(perm_from_json(pj, n));
  if (degree_out) *degree_out = n;
  return elems;
}

Json perm_set_to_json(unsigned degree, const std::vector<Perm>& elems) {
  Json j;
  j["n"] = degree;
  Json arr = Json::array();
  for (const auto& p : elems) arr.push_back(perm_to_json(p));
  j["elements"] = std::move(arr);
  return j;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::usage, "cannot open file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    fail(ErrorCode::usage, "invalid JSON in " + path + ": " + e.what());
  }
  return j;
}

}  // namespace irk
