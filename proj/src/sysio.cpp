#include "netsdp/sysio.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "netsdp/errors.hpp"

namespace netsdp {

namespace {

using nlohmann::json;

json matrix_to_json(const Eigen::MatrixXd& M) {
  json arr = json::array();
  for (int r = 0; r < M.rows(); ++r)
    for (int c = 0; c < M.cols(); ++c) arr.push_back(M(r, c));
  return arr;
}

Eigen::MatrixXd matrix_from_json(const json& arr, int rows, int cols,
                                 const char* what) {
  if (!arr.is_array() || static_cast<int>(arr.size()) != rows * cols)
    throw IoError(std::string("system file: bad entry count for ") + what);
  Eigen::MatrixXd M(rows, cols);
  int k = 0;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      const json& v = arr[k++];
      if (!v.is_number())
        throw IoError(std::string("system file: non-numeric entry in ") + what);
      M(r, c) = v.get<double>();
    }
  return M;
}

std::string block_key(int i, int j) {
  return std::to_string(i + 1) + "," + std::to_string(j + 1);
}

}  // namespace

std::string system_to_json(const NetworkedSystem& sys) {
  const int n = sys.node_count();
  json doc;
  doc["version"] = 1;
  doc["n"] = n;
  json blocks = json::array();
  json B = json::array(), C = json::array(), D = json::array();
  json A = json::object();
  for (int i = 0; i < n; ++i) {
    const Subsystem& s = sys.subsystems[i];
    blocks.push_back({{"alpha", s.alpha}, {"m", s.m}, {"d", s.d}});
    A[block_key(i, i)] = matrix_to_json(s.A);
    B.push_back(matrix_to_json(s.B));
    C.push_back(matrix_to_json(s.C));
    D.push_back(matrix_to_json(s.D));
  }
  for (const auto& [key, blk] : sys.coupling_blocks)
    A[block_key(key.first, key.second)] = matrix_to_json(blk);
  json edges = json::array();
  for (auto [i, j] : sys.directed_edges)
    edges.push_back(json::array({i + 1, j + 1}));
  doc["blocks"] = blocks;
  doc["edges"] = edges;
  doc["A"] = A;
  doc["B"] = B;
  doc["C"] = C;
  doc["D"] = D;
  return doc.dump(2) + "\n";
}

NetworkedSystem system_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw IoError(std::string("system file: JSON parse failure: ") + e.what());
  }
  try {
    if (!doc.is_object() || doc.at("version").get<int>() != 1)
      throw IoError("system file: unsupported version");
    const int n = doc.at("n").get<int>();
    if (n < 1) throw IoError("system file: n must be positive");
    const json& blocks = doc.at("blocks");
    const json& B = doc.at("B");
    const json& C = doc.at("C");
    const json& D = doc.at("D");
    const json& A = doc.at("A");
    if (static_cast<int>(blocks.size()) != n ||
        static_cast<int>(B.size()) != n || static_cast<int>(C.size()) != n ||
        static_cast<int>(D.size()) != n)
      throw IoError("system file: blocks/B/C/D must have n entries");

    NetworkedSystem sys;
    sys.subsystems.resize(n);
    for (int i = 0; i < n; ++i) {
      Subsystem& s = sys.subsystems[i];
      s.alpha = blocks[i].at("alpha").get<int>();
      s.m = blocks[i].at("m").get<int>();
      s.d = blocks[i].at("d").get<int>();
      if (s.alpha < 1 || s.m < 1 || s.d < 1)
        throw IoError("system file: block dimensions must be positive");
      if (!A.contains(block_key(i, i)))
        throw IoError("system file: missing diagonal block " + block_key(i, i));
      s.A = matrix_from_json(A.at(block_key(i, i)), s.alpha, s.alpha, "A");
      s.B = matrix_from_json(B[i], s.alpha, s.m, "B");
      s.C = matrix_from_json(C[i], s.d, s.alpha, "C");
      s.D = matrix_from_json(D[i], s.d, s.m, "D");
    }
    for (const json& e : doc.at("edges")) {
      if (!e.is_array() || e.size() != 2)
        throw IoError("system file: edges must be [i,j] pairs");
      const int i = e[0].get<int>() - 1;
      const int j = e[1].get<int>() - 1;
      if (i < 0 || j < 0 || i >= n || j >= n || i == j)
        throw IoError("system file: edge endpoint out of range");
      sys.directed_edges.emplace_back(i, j);
      const std::string key = block_key(j, i);
      if (!A.contains(key))
        throw IoError("system file: missing coupling block " + key);
      sys.coupling_blocks[{j, i}] = matrix_from_json(
          A.at(key), sys.subsystems[j].alpha, sys.subsystems[i].alpha, "A");
    }
    std::sort(sys.directed_edges.begin(), sys.directed_edges.end());
    const auto dup = std::adjacent_find(sys.directed_edges.begin(),
                                        sys.directed_edges.end());
    if (dup != sys.directed_edges.end())
      throw IoError("system file: duplicate edge");
    // Reject A blocks that correspond to no diagonal or coupling position.
    const size_t expected_blocks = static_cast<size_t>(n) +
                                   sys.coupling_blocks.size();
    if (A.size() != expected_blocks)
      throw IoError("system file: A contains blocks outside the edge set");
    return sys;
  } catch (const json::exception& e) {
    throw IoError(std::string("system file: malformed document: ") + e.what());
  }
}

void write_system(const NetworkedSystem& sys, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << system_to_json(sys);
  out.flush();
  if (!out) throw IoError("write failure on " + path);
}

NetworkedSystem read_system(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return system_from_json(buf.str());
}

}  // namespace netsdp
