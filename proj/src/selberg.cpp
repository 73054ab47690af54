#include "gaplab/selberg.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace gaplab {

namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

u64 gcd64(u64 a, u64 b) { return std::gcd(a, b); }

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

u64 parse_u64(const std::string& s, const std::string& where) {
  try {
    std::size_t pos = 0;
    unsigned long long v = std::stoull(trim(s), &pos);
    if (pos != trim(s).size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument(where + ": '" + trim(s) + "' is not an integer");
  }
}

}  // namespace

u64 euler_phi(u64 n) {
  u64 result = n;
  for (u64 p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      result -= result / p;
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

void validate_pattern(const ObstructionPattern& pat) {
  if (pat.W0 < 1) throw std::invalid_argument("pattern: W0 must be >= 1");
  if (pat.z < 2) throw std::invalid_argument("pattern: z must be >= 2");
  if (pat.b >= pat.W0 && pat.W0 > 1)
    throw std::invalid_argument("pattern: residue b must be < W0");
  if (gcd64(pat.b, pat.W0) != 1)
    throw std::invalid_argument("pattern: gcd(b, W0) must be 1");
  for (const auto& [p, omega] : pat.forbidden) {
    if (!is_prime(p))
      throw std::invalid_argument("pattern: modulus " + std::to_string(p) + " is not prime");
    if (p > pat.z)
      throw std::invalid_argument("pattern: modulus " + std::to_string(p) + " exceeds z");
    if (pat.W0 % p == 0)
      throw std::invalid_argument("pattern: modulus " + std::to_string(p) + " divides W0");
    for (u64 r : omega)
      if (r == 0 || r >= p)
        throw std::invalid_argument("pattern: residue " + std::to_string(r) +
                                    " not reduced mod " + std::to_string(p));
  }
}

ObstructionPattern parse_pattern_text(const std::string& text,
                                      const std::string& origin) {
  ObstructionPattern pat;
  bool saw_w0 = false, saw_b = false, saw_z = false;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw std::invalid_argument(origin + ":" + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto where = origin + ":" + std::to_string(lineno);
    if (line.rfind("W0=", 0) == 0) {
      pat.W0 = parse_u64(line.substr(3), where);
      saw_w0 = true;
    } else if (line.rfind("b=", 0) == 0) {
      pat.b = parse_u64(line.substr(2), where);
      saw_b = true;
    } else if (line.rfind("z=", 0) == 0) {
      pat.z = parse_u64(line.substr(2), where);
      saw_z = true;
    } else {
      auto colon = line.find(':');
      if (colon == std::string::npos) fail("expected 'p: r1,r2,...'");
      u64 p = parse_u64(line.substr(0, colon), where);
      std::set<u64> omega;
      std::string rest = line.substr(colon + 1);
      std::istringstream rs(rest);
      std::string item;
      while (std::getline(rs, item, ',')) {
        item = trim(item);
        if (item.empty()) fail("empty residue entry");
        omega.insert(parse_u64(item, where));
      }
      if (omega.empty()) fail("no residues listed for modulus " + std::to_string(p));
      if (pat.forbidden.count(p)) fail("duplicate modulus " + std::to_string(p));
      pat.forbidden[p] = std::move(omega);
    }
  }
  if (!saw_w0 || !saw_b || !saw_z)
    throw std::invalid_argument(origin + ": missing W0=/b=/z= header");
  try {
    validate_pattern(pat);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(origin + ": " + e.what());
  }
  return pat;
}

ObstructionPattern parse_pattern_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open pattern file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_pattern_text(buf.str(), path);
}

Rat local_weakness_exact(const ObstructionPattern& pat) {
  validate_pattern(pat);
  if (pat.forbidden.size() > 64)
    throw std::invalid_argument("local_weakness_exact: more than 64 factors");
  Rat w = 1;
  for (const auto& [p, omega] : pat.forbidden)
    w *= Rat(Int(p - 1 - omega.size()), Int(p - 1));
  return w;
}

double local_weakness(const ObstructionPattern& pat) {
  validate_pattern(pat);
  if (pat.forbidden.size() <= 64) return to_double(local_weakness_exact(pat));
  double w = 1.0;
  for (const auto& [p, omega] : pat.forbidden)
    w *= 1.0 - static_cast<double>(omega.size()) / static_cast<double>(p - 1);
  return w;
}

ObstructionPattern combine_patterns(const ObstructionPattern& a,
                                    const ObstructionPattern& b) {
  if (a.W0 != b.W0 || a.b != b.b || a.z != b.z)
    throw std::invalid_argument("combine_patterns: W0/b/z mismatch");
  ObstructionPattern out = a;
  for (const auto& [p, omega] : b.forbidden) {
    if (out.forbidden.count(p))
      throw std::invalid_argument("combine_patterns: overlapping support at p=" +
                                  std::to_string(p));
    out.forbidden[p] = omega;
  }
  return out;
}

SelbergSystem make_selberg_system(const ObstructionPattern& pat, u64 R) {
  validate_pattern(pat);
  if (R < 1) throw std::invalid_argument("make_selberg_system: R must be >= 1");
  SelbergSystem sys;
  sys.pattern = pat;
  sys.R = R;

  std::vector<std::pair<u64, u64>> pw;  // (p, omega(p)), omega > 0
  for (const auto& [p, omega] : pat.forbidden)
    if (!omega.empty()) pw.emplace_back(p, omega.size());

  // all squarefree products of supported primes up to R, depth-first
  sys.support.push_back(1);
  sys.density[1] = 1;
  struct Frame {
    std::size_t idx;
    u64 d;
    Rat g;
  };
  std::vector<Frame> dfs{{0, 1, Rat(1)}};
  while (!dfs.empty()) {
    Frame f = dfs.back();
    dfs.pop_back();
    for (std::size_t i = f.idx; i < pw.size(); ++i) {
      auto [p, om] = pw[i];
      if (f.d > R / p) continue;
      u64 d = f.d * p;
      Rat g = f.g * Rat(Int(om), Int(p - 1));
      sys.support.push_back(d);
      sys.density[d] = g;
      dfs.push_back({i + 1, d, g});
    }
  }
  std::sort(sys.support.begin(), sys.support.end());
  return sys;
}

Rat selberg_weakness_closed_form(const SelbergSystem& sys) {
  for (const auto& [p, omega] : sys.pattern.forbidden)
    if (!omega.empty() && omega.size() == p - 1)
      throw std::domain_error("selberg_weakness_closed_form: degenerate g(p) = 1 at p=" +
                              std::to_string(p));
  Rat G = 0;
  for (u64 d : sys.support) {
    Rat h = 1;  // prod over p|d of g(p)/(1-g(p))
    u64 m = d;
    for (const auto& [p, omega] : sys.pattern.forbidden) {
      if (m % p == 0) {
        Rat gp(Int(omega.size()), Int(p - 1));
        h *= gp / (Rat(1) - gp);
        m /= p;
      }
    }
    G += h;
  }
  return Rat(1) / G;
}

QfSolution selberg_weakness_qf(const SelbergSystem& sys) {
  const std::size_t n = sys.support.size();
  if (n > kQfSupportCap)
    throw std::length_error("selberg_weakness_qf: support larger than 4096");

  QfSolution sol;
  sol.lambda[1] = 1.0;
  if (n == 1) {
    sol.minimum = 1.0;
    return sol;
  }

  std::vector<double> gd(n);
  for (std::size_t i = 0; i < n; ++i) gd[i] = to_double(sys.density.at(sys.support[i]));

  // M[i][j] = g([d_i,d_j]) = g(d_i) g(d_j) / g(gcd)
  auto entry = [&](std::size_t i, std::size_t j) {
    u64 gc = gcd64(sys.support[i], sys.support[j]);
    return gd[i] * gd[j] / to_double(sys.density.at(gc));
  };

  Eigen::MatrixXd A(n - 1, n - 1);
  Eigen::VectorXd m(n - 1);
  for (std::size_t i = 1; i < n; ++i) {
    m(i - 1) = entry(0, i);  // d_0 = 1
    for (std::size_t j = i; j < n; ++j) {
      double v = entry(i, j);
      A(i - 1, j - 1) = v;
      A(j - 1, i - 1) = v;
    }
  }

  Eigen::LDLT<Eigen::MatrixXd> ldlt(A);
  if (ldlt.info() != Eigen::Success)
    throw std::runtime_error("selberg_weakness_qf: singular stationarity system");
  Eigen::VectorXd x = ldlt.solve(-m);
  if (!x.allFinite())
    throw std::runtime_error("selberg_weakness_qf: singular stationarity system");

  sol.minimum = 1.0 + m.dot(x);
  for (std::size_t i = 1; i < n; ++i) sol.lambda[sys.support[i]] = x(i - 1);
  return sol;
}

double sieve_function_F1(double s) {
  if (!(s >= 1.0 && s <= 3.0))
    throw std::domain_error("sieve_function_F1: s outside [1, 3]");
  return 2.0 * std::exp(kEulerGamma) / s;
}

u64 sifted_count(const PrimeWindow& w, const ObstructionPattern& pat) {
  validate_pattern(pat);
  // flatten the residue sets for cheap membership tests
  std::vector<std::pair<u64, std::vector<char>>> tests;
  tests.reserve(pat.forbidden.size());
  for (const auto& [p, omega] : pat.forbidden) {
    if (omega.empty()) continue;
    std::vector<char> flags(p, 0);
    for (u64 r : omega) flags[r] = 1;
    tests.emplace_back(p, std::move(flags));
  }

  const auto& ps = w.primes;
  u64 count = 0;
#pragma omp parallel for reduction(+ : count) schedule(static)
  for (i64 i = 0; i < static_cast<i64>(ps.size()); ++i) {
    u64 p = ps[i];
    if (p % pat.W0 != pat.b % pat.W0) continue;
    bool keep = true;
    for (const auto& [q, flags] : tests) {
      if (flags[p % q]) {
        keep = false;
        break;
      }
    }
    count += keep ? 1 : 0;
  }
  return count;
}

SiftedBoundReport sifted_bound_report(const PrimeWindow& w,
                                      const ObstructionPattern& pat, u64 R) {
  SiftedBoundReport rep;
  rep.count = sifted_count(w, pat);
  rep.weakness = local_weakness(pat);
  rep.s = std::log(static_cast<double>(R)) / std::log(static_cast<double>(pat.z));
  for (const auto& [p, omega] : pat.forbidden)
    rep.max_omega = std::max<unsigned>(rep.max_omega, omega.size());

  rep.f1_defined = rep.max_omega <= 1;
  if (rep.f1_defined) {
    rep.f1 = sieve_function_F1(rep.s);  // throws outside [1,3]
    double X = static_cast<double>(w.X);
    rep.main_term = rep.f1 * rep.weakness * X /
                    (static_cast<double>(euler_phi(pat.W0)) * std::log(X));
    if (rep.main_term > 0.0) {
      rep.ratio_defined = true;
      rep.ratio = static_cast<double>(rep.count) / rep.main_term;
    }
  }
  return rep;
}

namespace ref {

u64 sifted_count(const PrimeWindow& w, const ObstructionPattern& pat) {
  u64 count = 0;
  for (u64 p : w.primes) {
    if (p % pat.W0 != pat.b % pat.W0) continue;
    bool keep = true;
    for (const auto& [q, omega] : pat.forbidden)
      if (omega.count(p % q)) {
        keep = false;
        break;
      }
    if (keep) ++count;
  }
  return count;
}

}  // namespace ref

}  // namespace gaplab
