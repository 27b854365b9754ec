#include "mpcc/problem_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace mpcc {

namespace {

using ordered_json = nlohmann::ordered_json;

std::vector<double> to_vector(const ordered_json& j, const char* what) {
  if (!j.is_array()) throw SchemaError(std::string(what) + " must be an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& t : j) {
    if (!t.is_number()) throw SchemaError(std::string(what) + " must be numeric");
    out.push_back(t.get<double>());
  }
  return out;
}

std::vector<std::vector<double>> to_matrix(const ordered_json& j,
                                           const char* what) {
  if (!j.is_array()) throw SchemaError(std::string(what) + " must be an array");
  std::vector<std::vector<double>> out;
  out.reserve(j.size());
  for (const auto& r : j) out.push_back(to_vector(r, what));
  return out;
}

}  // namespace

QuadraticMpcc parse_problem(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw SchemaError(std::string("problem file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaError("problem file must be a JSON object");

  QuadraticMpcc q;
  try {
    q.n0 = doc.at("n0").get<std::size_t>();
    const std::size_t p_declared = doc.at("p").get<std::size_t>();

    for (const auto& t : doc.at("Q")) {
      if (!t.is_array() || t.size() != 3)
        throw SchemaError("Q entries must be [row, col, value]");
      q.q_matrix.add(t[0].get<std::size_t>(), t[1].get<std::size_t>(),
                     t[2].get<double>());
    }
    q.g = to_vector(doc.at("g"), "g");

    if (!doc.at("l0").is_null()) q.l0 = to_vector(doc.at("l0"), "l0");
    if (!doc.at("u0").is_null()) q.u0 = to_vector(doc.at("u0"), "u0");

    for (const auto& t : doc.at("cc_pairs")) {
      if (!t.is_array() || t.size() != 2)
        throw SchemaError("cc_pairs entries must be [j, k]");
      q.cc_pairs.emplace_back(t[0].get<std::size_t>(), t[1].get<std::size_t>());
    }

    if (doc.contains("A") || doc.contains("a")) {
      QuadraticMpcc::LinearIneq li;
      li.a_matrix = to_matrix(doc.at("A"), "A");
      li.a_offset = to_vector(doc.at("a"), "a");
      q.linear_ineq = std::move(li);
    }
    if (doc.contains("N") || doc.contains("M") || doc.contains("q")) {
      QuadraticMpcc::LinearCc lc;
      lc.n_matrix = to_matrix(doc.at("N"), "N");
      lc.m_matrix = to_matrix(doc.at("M"), "M");
      lc.q_offset = to_vector(doc.at("q"), "q");
      q.linear_cc = std::move(lc);
    }
    if (doc.contains("name")) q.name = doc.at("name").get<std::string>();
    if (doc.contains("seed")) q.seed = doc.at("seed").get<std::uint64_t>();

    if (p_declared != q.cc_count())
      throw SchemaError("declared p does not match the constraint count");
    q.q_matrix.n = q.dim();
  } catch (const SchemaError&) {
    throw;
  } catch (const std::exception& e) {
    throw SchemaError(std::string("malformed problem file: ") + e.what());
  }
  q.validate();
  return q;
}

std::string serialize_problem(const QuadraticMpcc& q) {
  ordered_json doc;
  doc["n0"] = q.n0;
  doc["p"] = q.cc_count();
  ordered_json triplets = ordered_json::array();
  for (std::size_t k = 0; k < q.q_matrix.nnz(); ++k)
    triplets.push_back({q.q_matrix.row[k], q.q_matrix.col[k], q.q_matrix.value[k]});
  doc["Q"] = std::move(triplets);
  doc["g"] = q.g;
  doc["l0"] = q.l0.empty() ? ordered_json(nullptr) : ordered_json(q.l0);
  doc["u0"] = q.u0.empty() ? ordered_json(nullptr) : ordered_json(q.u0);
  ordered_json pairs = ordered_json::array();
  for (const auto& [j, k] : q.cc_pairs) pairs.push_back({j, k});
  doc["cc_pairs"] = std::move(pairs);
  if (q.linear_ineq) {
    doc["A"] = q.linear_ineq->a_matrix;
    doc["a"] = q.linear_ineq->a_offset;
  }
  if (q.linear_cc) {
    doc["N"] = q.linear_cc->n_matrix;
    doc["M"] = q.linear_cc->m_matrix;
    doc["q"] = q.linear_cc->q_offset;
  }
  if (!q.name.empty()) doc["name"] = q.name;
  if (q.seed) doc["seed"] = *q.seed;
  return doc.dump() + "\n";
}

QuadraticMpcc load_problem(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot open problem file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem(buf.str());
}

void save_problem(const std::string& path, const QuadraticMpcc& q) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SchemaError("cannot write problem file: " + path);
  out << serialize_problem(q);
}

}  // namespace mpcc
