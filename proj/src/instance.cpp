#include "nclin/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace nclin {

double smooth_constant(int k) {
  cd w = root_of_unity(k, k / 2);
  return std::norm(1.0 - w);
}

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
  throw input_error("line " + std::to_string(line) + ": " + msg);
}

}  // namespace

CspInstance parse_instance(std::istream& in) {
  CspInstance inst;
  std::string raw;
  int lineno = 0;
  bool have_header = false;
  // merge duplicates on identical (i,j,c,kind)
  std::map<std::tuple<int, int, int, int>, double> merged;
  std::vector<std::tuple<int, int, int, int>> order;

  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    std::string line = (hash == std::string::npos) ? raw : raw.substr(0, hash);
    std::istringstream ss(line);
    std::string tok;
    if (!(ss >> tok)) continue;
    if (!have_header) {
      if (tok != "lin2k") fail(lineno, "expected header 'lin2k <k> <N>'");
      if (!(ss >> inst.k >> inst.num_vars)) fail(lineno, "malformed header");
      if (inst.k < 2) fail(lineno, "k must be >= 2");
      if (inst.num_vars < 1) fail(lineno, "N must be >= 1");
      std::string extra;
      if (ss >> extra) fail(lineno, "trailing tokens in header");
      have_header = true;
      continue;
    }
    ConstraintKind kind;
    if (tok == "E")
      kind = ConstraintKind::Equation;
    else if (tok == "I")
      kind = ConstraintKind::Inequation;
    else
      fail(lineno, "constraint kind must be E or I, got '" + tok + "'");
    long long i, j, c;
    double w;
    if (!(ss >> i >> j >> w >> c)) fail(lineno, "malformed constraint line");
    std::string extra;
    if (ss >> extra) fail(lineno, "trailing tokens in constraint line");
    if (i < 1 || i > inst.num_vars) fail(lineno, "index i out of range");
    if (j < 1 || j > inst.num_vars) fail(lineno, "index j out of range");
    if (i == j) fail(lineno, "self-loop i == j is not allowed");
    if (w < 0) fail(lineno, "negative weight");
    if (!std::isfinite(w)) fail(lineno, "non-finite weight");
    if (c < 0 || c >= inst.k) fail(lineno, "shift c out of range [0,k)");
    if (i > j) {  // store symmetric partner: c_ij = -c_ji mod k
      std::swap(i, j);
      c = (inst.k - c) % inst.k;
    }
    auto key = std::make_tuple(static_cast<int>(i), static_cast<int>(j), static_cast<int>(c),
                               static_cast<int>(kind));
    auto [it, inserted] = merged.emplace(key, 0.0);
    if (inserted) order.push_back(key);
    it->second += w;
  }
  if (!have_header) throw input_error("empty input: missing 'lin2k' header");
  for (const auto& key : order) {
    auto [i, j, c, kd] = key;
    inst.constraints.push_back({i, j, merged.at(key), c, static_cast<ConstraintKind>(kd)});
  }
  return inst;
}

CspInstance parse_instance(const std::string& text) {
  std::istringstream ss(text);
  return parse_instance(ss);
}

CspInstance load_instance(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw input_error("cannot open instance file: " + path);
  return parse_instance(f);
}

std::string instance_to_json(const CspInstance& inst) {
  nlohmann::json j;
  j["k"] = inst.k;
  j["num_vars"] = inst.num_vars;
  auto& cs = j["constraints"] = nlohmann::json::array();
  for (const auto& c : inst.constraints) {
    cs.push_back({{"kind", c.kind == ConstraintKind::Equation ? "E" : "I"},
                  {"i", c.i},
                  {"j", c.j},
                  {"w", c.w},
                  {"c", c.c}});
  }
  return j.dump(2);
}

double objective_of_assignment(const CspInstance& inst, const std::vector<int>& assignment,
                               bool smooth) {
  if (static_cast<int>(assignment.size()) != inst.num_vars)
    throw input_error("assignment length mismatch");
  double val = 0.0;
  double ak = smooth_constant(inst.k);
  for (const auto& con : inst.constraints) {
    int diff = ((assignment[con.j - 1] - assignment[con.i - 1]) % inst.k + inst.k) % inst.k;
    if (!smooth) {
      bool sat = (diff == con.c);
      if (con.kind == ConstraintKind::Equation)
        val += sat ? con.w : 0.0;
      else
        val += sat ? 0.0 : con.w;
    } else {
      // |x_j - w^c x_i|^2 / a_k with x = k-th roots of unity
      cd xi = root_of_unity(inst.k, assignment[con.i - 1]);
      cd xj = root_of_unity(inst.k, assignment[con.j - 1]);
      double dist2 = std::norm(xj - root_of_unity(inst.k, con.c) * xi) / ak;
      if (con.kind == ConstraintKind::Equation)
        val += con.w * (1.0 - dist2);
      else
        val += con.w * dist2;
    }
  }
  return val;
}

double objective_via_indicator_sum(const CspInstance& inst, const std::vector<int>& assignment) {
  double val = 0.0;
  int k = inst.k;
  for (const auto& con : inst.constraints) {
    cd ind = 0.0;
    for (int s = 0; s < k; ++s) {
      cd term = root_of_unity(k, -static_cast<long long>(con.c) * s) *
                root_of_unity(k, -static_cast<long long>(assignment[con.i - 1]) * s) *
                root_of_unity(k, static_cast<long long>(assignment[con.j - 1]) * s);
      ind += term;
    }
    ind /= static_cast<double>(k);
    if (con.kind == ConstraintKind::Equation)
      val += con.w * ind.real();
    else
      val += con.w * (1.0 - ind.real());
  }
  return val;
}

double classical_value_bruteforce(const CspInstance& inst) {
  double total = 1.0;
  for (int i = 0; i < inst.num_vars; ++i) {
    total *= inst.k;
    if (total > 1e7) throw budget_error("classical_value_bruteforce: k^N exceeds 1e7");
  }
  std::vector<int> a(inst.num_vars, 0);
  double best = objective_of_assignment(inst, a);
  while (true) {
    int pos = 0;
    while (pos < inst.num_vars) {
      if (++a[pos] < inst.k) break;
      a[pos] = 0;
      ++pos;
    }
    if (pos == inst.num_vars) break;
    best = std::max(best, objective_of_assignment(inst, a));
  }
  return best;
}

}  // namespace nclin
