#include "allmach/integrator/tableau.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "allmach/core/errors.hpp"

namespace allmach {

namespace {

double parse_entry(const std::string& tok) {
  const auto slash = tok.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      const double v = std::stod(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      return v;
    }
    const std::string num = tok.substr(0, slash), den = tok.substr(slash + 1);
    std::size_t u1 = 0, u2 = 0;
    const double n = std::stod(num, &u1), d = std::stod(den, &u2);
    if (u1 != num.size() || u2 != den.size() || d == 0.0) throw std::invalid_argument(tok);
    return n / d;
  } catch (const std::exception&) {
    throw ConfigError("tableau: bad entry '" + tok + "'");
  }
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

ButcherPair parse_tableau(const std::string& text, const std::string& name) {
  std::vector<std::string> toks;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string t;
    while (ls >> t) toks.push_back(t);
  }
  if (toks.empty()) throw ConfigError("tableau '" + name + "': empty");
  ButcherPair t;
  t.name = name;
  const double sd = parse_entry(toks[0]);
  t.s = static_cast<int>(sd);
  if (t.s < 1 || t.s != sd) throw ConfigError("tableau '" + name + "': bad stage count");
  const std::size_t s = static_cast<std::size_t>(t.s);
  const std::size_t need = 1 + 2 * (s * s + 2 * s);
  if (toks.size() != need)
    throw ConfigError("tableau '" + name + "': expected " + std::to_string(need) +
                      " numbers, found " + std::to_string(toks.size()));
  std::size_t k = 1;
  auto take = [&](std::vector<double>& v, std::size_t count) {
    v.resize(count);
    for (auto& x : v) x = parse_entry(toks[k++]);
  };
  take(t.At, s * s);
  take(t.bt, s);
  take(t.ct, s);
  take(t.A, s * s);
  take(t.b, s);
  take(t.c, s);
  return t;
}

ButcherPair load_tableau(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("tableau: cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  std::string name = path;
  const auto slash = name.find_last_of('/');
  if (slash != std::string::npos) name = name.substr(slash + 1);
  const auto dot = name.find('.');
  if (dot != std::string::npos) name = name.substr(0, dot);
  return parse_tableau(ss.str(), name);
}

ButcherPair tableau_imex1() {
  return parse_tableau("1\n0\n1\n0\n1\n1\n1\n", "imex1");
}

ButcherPair tableau_ars443() {
  static const char* text = R"(5
0 0 0 0 0
1/2 0 0 0 0
11/18 1/18 0 0 0
5/6 -5/6 1/2 0 0
1/4 7/4 3/4 -7/4 0
1/4 7/4 3/4 -7/4 0
0 1/2 2/3 1/2 1
0 0 0 0 0
0 1/2 0 0 0
0 1/6 1/2 0 0
0 -1/2 1/2 1/2 0
0 3/2 -3/2 1/2 1/2
0 3/2 -3/2 1/2 1/2
0 1/2 2/3 1/2 1
)";
  return parse_tableau(text, "ars443");
}

ButcherPair tableau_by_name(const std::string& name) {
  if (name == "imex1") return tableau_imex1();
  if (name == "imex3" || name == "ars443") return tableau_ars443();
  throw ConfigError("unknown tableau '" + name + "'");
}

TableauReport validate_tableau(const ButcherPair& t, int order, double tol) {
  TableauReport rep;
  const int s = t.s;
  auto fail = [&](const std::string& what, double got, double want) {
    rep.violations.push_back(what + ": got " + fmt(got) + ", expected " + fmt(want));
  };
  auto check = [&](const std::string& what, double got, double want) {
    if (!(std::abs(got - want) <= tol)) {
      fail(what, got, want);
      return false;
    }
    return true;
  };
  const std::size_t n = static_cast<std::size_t>(s);
  if (t.At.size() != n * n || t.A.size() != n * n || t.b.size() != n || t.bt.size() != n ||
      t.c.size() != n || t.ct.size() != n) {
    rep.violations.push_back("array sizes do not match the stage count");
    return rep;
  }
  for (int i = 0; i < s; ++i) {
    double ra = 0.0, rt = 0.0;
    for (int j = 0; j < s; ++j) {
      ra += t.a(i, j);
      rt += t.at(i, j);
      if (j >= i && t.at(i, j) != 0.0)
        fail("explicit entry (" + std::to_string(i) + "," + std::to_string(j) + ") not strictly lower",
             t.at(i, j), 0.0);
      if (j > i && t.a(i, j) != 0.0)
        fail("implicit entry (" + std::to_string(i) + "," + std::to_string(j) + ") above diagonal",
             t.a(i, j), 0.0);
    }
    check("implicit row sum " + std::to_string(i), ra, t.c[i]);
    check("explicit row sum " + std::to_string(i), rt, t.ct[i]);
  }
  for (int j = 0; j < s; ++j)
    check("stiff accuracy b[" + std::to_string(j) + "]", t.a(s - 1, j), t.b[j]);

  auto dot = [&](const std::vector<double>& u, const std::vector<double>& v) {
    double r = 0.0;
    for (int i = 0; i < s; ++i) r += u[i] * v[i];
    return r;
  };
  auto mul = [&](const std::vector<double>& M, const std::vector<double>& v) {
    std::vector<double> r(n, 0.0);
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j) r[i] += M[i * s + j] * v[j];
    return r;
  };
  auto had = [&](const std::vector<double>& u, const std::vector<double>& v) {
    std::vector<double> r(n);
    for (int i = 0; i < s; ++i) r[i] = u[i] * v[i];
    return r;
  };

  std::vector<double> one(n, 1.0);
  const std::size_t before = rep.violations.size();
  bool ok1 = check("order 1: sum b", dot(t.b, one), 1.0);
  if (ok1 && rep.violations.size() == before) rep.order = 1;
  if (order >= 2) {
    bool ok = check("order 2: b.c", dot(t.b, t.c), 0.5);
    ok = check("order 2: b.ct", dot(t.b, t.ct), 0.5) && ok;
    if (ok && rep.order == 1) rep.order = 2;
  }
  if (order >= 3) {
    bool ok = check("order 3: b.c^2", dot(t.b, had(t.c, t.c)), 1.0 / 3.0);
    ok = check("order 3: b.(c ct)", dot(t.b, had(t.c, t.ct)), 1.0 / 3.0) && ok;
    ok = check("order 3: b.ct^2", dot(t.b, had(t.ct, t.ct)), 1.0 / 3.0) && ok;
    ok = check("order 3: b.A c", dot(t.b, mul(t.A, t.c)), 1.0 / 6.0) && ok;
    ok = check("order 3: b.A ct", dot(t.b, mul(t.A, t.ct)), 1.0 / 6.0) && ok;
    ok = check("order 3: b.At c", dot(t.b, mul(t.At, t.c)), 1.0 / 6.0) && ok;
    ok = check("order 3: b.At ct", dot(t.b, mul(t.At, t.ct)), 1.0 / 6.0) && ok;
    if (ok && rep.order == 2) rep.order = 3;
  }
  return rep;
}

}  // namespace allmach
