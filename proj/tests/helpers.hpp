#pragma once

#include "bloch/report.hpp"

#include <sys/wait.h>

#include <cstdio>
#include <random>
#include <set>
#include <string>
#include <tuple>

// Shared plumbing for the test binaries: fixture loading, CLI invocation,
// the random small-graph corpus, and golden polynomial builders.
namespace testutil {

inline std::string fixture_path(const std::string& name) {
  return std::string(BLOCH_FIXTURES_DIR) + "/" + name;
}

inline bloch::PeriodicGraph load_fixture(const std::string& name) {
  return bloch::parse_graph_file(fixture_path(name));
}

struct CliResult {
  int code = -1;
  std::string out;
};

// Runs the tool through the shell and captures stdout (stderr folded in when
// merge_stderr, discarded otherwise plus the exit code either way).
inline CliResult run_cli(const std::string& args, bool merge_stderr = false,
                         const std::string& env_prefix = "") {
  std::string cmd = env_prefix + "\"" + BLOCH_CLI_PATH + "\" " + args +
                    (merge_stderr ? " 2>&1" : " 2>/dev/null");
  CliResult r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof(buf), p)) > 0) r.out.append(buf, n);
  int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

// Random valid input document, d <= 2 and at most 3 vertices, with the
// parser's canonicalization applied. Weights w0, w1, ... are all distinct.
inline bloch::PeriodicGraph random_graph(std::mt19937_64& rng) {
  int d = 1 + (int)(rng() % 2);
  int nv = 1 + (int)(rng() % 3);
  const char* names[3] = {"p", "q", "r"};
  nlohmann::ordered_json j;
  j["d"] = d;
  std::vector<std::string> vs(names, names + nv);
  j["vertices"] = vs;
  j["edges"] = nlohmann::ordered_json::array();
  std::set<std::tuple<int, int, std::vector<int>>> seen;
  int want = 1 + (int)(rng() % 5), placed = 0;
  for (int tries = 0; tries < 60 && placed < want; ++tries) {
    int u = (int)(rng() % nv), v = (int)(rng() % nv);
    std::vector<int> shift(d);
    for (int i = 0; i < d; ++i) shift[i] = (int)(rng() % 3) - 1;
    bool zero = true;
    for (int s : shift) zero = zero && s == 0;
    if (u == v && zero) continue;
    std::vector<int> neg(shift);
    for (auto& s : neg) s = -s;
    auto key = std::min(std::make_tuple(u, v, shift), std::make_tuple(v, u, neg));
    if (!seen.insert(key).second) continue;
    nlohmann::ordered_json e;
    e["from"] = names[u];
    e["to"] = names[v];
    e["shift"] = shift;
    e["weight"] = "w" + std::to_string(placed++);
    j["edges"].push_back(e);
  }
  if (placed == 0) {
    nlohmann::ordered_json e;
    e["from"] = names[0];
    e["to"] = names[0];
    std::vector<int> shift(d, 0);
    shift[0] = 1;
    e["shift"] = shift;
    e["weight"] = "w0";
    j["edges"].push_back(e);
  }
  return bloch::parse_graph(j.dump());
}

inline bloch::ParamPoly sym(const std::string& s) { return bloch::ParamPoly::symbol(s); }

inline bloch::LaurentPoly lterm(const bloch::ExpVec& e, const bloch::ParamPoly& c) {
  return bloch::LaurentPoly::term(e, c);
}

inline bloch::LaurentPoly lone(int nvars) {
  return bloch::LaurentPoly::term(bloch::ExpVec(nvars, 0), bloch::ParamPoly::one());
}

// lambda^2 - lambda(V_u + V_v) + V_u V_v - a^2 - b^2 - c^2
//   - ab(x + 1/x) - ac(y + 1/y) - bc(x/y + y/x), the honeycomb dispersion.
inline bloch::LaurentPoly expected_hexagonal_phi() {
  using bloch::ParamPoly;
  auto a = sym("a"), b = sym("b"), c = sym("c"), vu = sym("V_u"), vv = sym("V_v");
  bloch::LaurentPoly f(3);
  f = f + lterm({0, 0, 2}, ParamPoly::one());
  f = f + lterm({0, 0, 1}, -(vu + vv));
  f = f + lterm({0, 0, 0}, vu * vv - a * a - b * b - c * c);
  f = f + lterm({1, 0, 0}, -(a * b)) + lterm({-1, 0, 0}, -(a * b));
  f = f + lterm({0, 1, 0}, -(a * c)) + lterm({0, -1, 0}, -(a * c));
  f = f + lterm({1, -1, 0}, -(b * c)) + lterm({-1, 1, 0}, -(b * c));
  return f;
}

// Dispersion of the square lattice with a pendant vertex and one doubled
// horizontal edge (the fixture with 4 vertical facets and 4 vertical edges).
inline bloch::LaurentPoly expected_singular_house_phi() {
  using bloch::ParamPoly;
  auto a = sym("a"), b = sym("b"), c = sym("c"), dd = sym("d");
  auto vu = sym("V_u"), vv = sym("V_v");
  bloch::LaurentPoly f(3);
  f = f + lterm({0, 0, 2}, ParamPoly::one());
  f = f + lterm({1, 0, 1}, b) + lterm({-1, 0, 1}, b);
  f = f + lterm({0, 1, 1}, c) + lterm({0, -1, 1}, c);
  f = f + lterm({0, 0, 1}, -(vu + vv));
  f = f + lterm({1, 0, 0}, -(b * vv + a * dd)) + lterm({-1, 0, 0}, -(b * vv + a * dd));
  f = f + lterm({0, 1, 0}, -(c * vv)) + lterm({0, -1, 0}, -(c * vv));
  f = f + lterm({0, 0, 0}, vu * vv - a * a - dd * dd);
  return f;
}

}  // namespace testutil
