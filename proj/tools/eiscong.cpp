// Command-line front end: survey, table, splitting, verify-cusps, norm.
#include <CLI11.hpp>

#include <atomic>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "eiscong/arith/integer.hpp"
#include "eiscong/arith/poly.hpp"
#include "eiscong/classfield/classfield.hpp"
#include "eiscong/congruence/congruence.hpp"
#include "eiscong/eisenstein/divisor.hpp"
#include "eiscong/error.hpp"
#include "eiscong/modsym/cache.hpp"
#include "eiscong/modsym/manin.hpp"
#include "json.hpp"

namespace {

using namespace eiscong;
using arith::BigInt;
using nlohmann::json;

enum class Format { Json, Tsv };

struct RunConfig {
  std::int64_t n = 19;
  std::int64_t p = 5;
  std::vector<std::int64_t> p_list{5};
  std::int64_t n_max = 50;
  std::int64_t ell_max = 0;
  std::optional<std::int64_t> sturm;
  unsigned threads = 1;
  std::string cache_dir;
  Format format = Format::Json;
  bool unsafe = false;
  // norm
  std::string eval;
  std::optional<std::string> search;
  std::int64_t bound = 2;
  bool symbolic = false;
};

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

std::string join(const std::vector<BigInt>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s;
}

json strings(const std::vector<int>& v) {
  json out = json::array();
  for (int x : v) out.push_back(std::to_string(x));
  return out;
}

json strings(const std::vector<BigInt>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(x.get_str());
  return out;
}

void check_sturm(const RunConfig& cfg, std::int64_t level) {
  if (cfg.sturm && *cfg.sturm < modsym::sturm_bound(level) && !cfg.unsafe)
    throw Error("--sturm below the Sturm bound " + std::to_string(modsym::sturm_bound(level)) + " requires --unsafe");
}

int cmd_survey(const RunConfig& cfg) {
  struct Job {
    std::int64_t n, p;
  };
  std::vector<Job> jobs;
  for (std::int64_t p : cfg.p_list) {
    if (p < 5 || !arith::is_prime(static_cast<std::uint64_t>(p))) throw Error("--p must be a prime >= 5");
    for (std::int64_t n : arith::primes_up_to(cfg.n_max))
      if (n != p && n % p != 1) jobs.push_back({n, p});
  }
  for (const auto& j : jobs) check_sturm(cfg, j.n * j.n);

  std::vector<std::optional<congruence::EisensteinLocusReport>> reports(jobs.size());
  std::vector<std::string> failures(jobs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next++) < jobs.size();) {
      try {
        reports[i] = congruence::eisenstein_locus(jobs[i].n, jobs[i].p, cfg.sturm);
      } catch (const std::exception& e) {
        failures[i] = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::max(1u, cfg.threads); ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();

  int code = 0;
  json rows = json::array();
  if (cfg.format == Format::Tsv) std::cout << "N\tp\tsturm\tdim_m\tdim_m_old\tverdict_m\tverdict_m_old\tmatches\n";
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (!reports[i]) {
      std::cerr << "N = " << jobs[i].n << ", p = " << jobs[i].p << ": " << failures[i] << "\n";
      code = std::max(code, 1);
      continue;
    }
    const auto& r = *reports[i];
    if (!r.matches_theorem()) code = 2;
    if (cfg.format == Format::Tsv)
      std::cout << r.N << '\t' << r.p << '\t' << r.sturm << '\t' << r.dim_m << '\t' << r.dim_m_old << '\t'
                << r.verdict_m << '\t' << r.verdict_m_old << '\t' << r.matches_theorem() << '\n';
    else
      rows.push_back(r.to_json());
  }
  if (cfg.format == Format::Json) std::cout << json{{"rows", rows}}.dump(2) << "\n";
  if (code == 2) std::cerr << "discrepancy: some rows disagree with N = -1 mod p\n";
  return code;
}

int cmd_table(const RunConfig& cfg) {
  const std::int64_t level = cfg.n * cfg.n;
  const std::int64_t ell_max = cfg.ell_max ? cfg.ell_max : modsym::sturm_bound(level);
  std::unique_ptr<modsym::HeckeCache> cache;
  if (!cfg.cache_dir.empty()) cache = std::make_unique<modsym::HeckeCache>(cfg.cache_dir);
  congruence::DecomposeOptions opts;
  opts.bound = std::max(ell_max, modsym::sturm_bound(level));
  opts.cache = cache.get();
  opts.threads = cfg.threads;
  auto cn = congruence::find_congruent_newform(cfg.n, cfg.p, opts);
  auto cert = congruence::congruence_depth(cn.eigensystem, cn.prime, cfg.n);
  auto rows = classfield::table_flags(cn.eigensystem, cn.prime, cert.s, cfg.n, cfg.p, ell_max);
  if (cfg.format == Format::Tsv) {
    std::cout << "# minpoly " << arith::to_string(cn.eigensystem.minpoly, "t") << "; " << cn.eigensystem.convention
              << "; s = " << cert.s << "; witness " << cert.witness << "\n";
    std::cout << classfield::table_tsv(rows);
    return 0;
  }
  json out = {{"eigensystem", {{"level", std::to_string(cn.eigensystem.level)},
                               {"minpoly", strings(cn.eigensystem.minpoly)},
                               {"convention", cn.eigensystem.convention}}},
              {"certificate", cert.to_json()},
              {"rows", json::array()}};
  for (const auto& r : rows) {
    json coeffs = json::array();
    for (const auto& c : r.a.coeffs()) coeffs.push_back(c.get_str());
    out["rows"].push_back({{"ell", std::to_string(r.ell)},
                           {"a", coeffs},
                           {"bold", r.bold},
                           {"circled", r.circled},
                           {"degrees", strings(r.degrees)}});
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_splitting(const RunConfig& cfg) {
  const std::int64_t ell_max = cfg.ell_max ? cfg.ell_max : 100;
  json rows = json::array();
  if (cfg.format == Format::Tsv) std::cout << "ell\tdegrees\tinert\tpth_power\tr\n";
  for (std::int64_t ell : arith::primes_up_to(ell_max)) {
    if (ell == cfg.p || ell == cfg.n) continue;
    auto r = classfield::splitting_in_F(ell, cfg.n, cfg.p);
    if (cfg.format == Format::Tsv)
      std::cout << ell << '\t' << join(r.degrees) << '\t' << r.inert << '\t' << r.pth_power << '\t' << r.r << '\n';
    else
      rows.push_back({{"ell", std::to_string(ell)},
                      {"degrees", strings(r.degrees)},
                      {"inert", r.inert},
                      {"pth_power", r.pth_power},
                      {"r", std::to_string(r.r)}});
  }
  if (cfg.format == Format::Json)
    std::cout << json{{"N", std::to_string(cfg.n)}, {"p", std::to_string(cfg.p)}, {"rows", rows}}.dump(2) << "\n";
  return 0;
}

int cmd_verify_cusps(const RunConfig& cfg) {
  const std::int64_t budget = cfg.ell_max ? cfg.ell_max : 200;
  auto r = eisenstein::verify_cusp_lattice(cfg.n, cfg.p, budget);
  if (cfg.format == Format::Tsv)
    std::cout << "N\tp\tdimension\tpassed\n" << r.N << '\t' << r.p << '\t' << r.dimension << '\t' << r.passed() << '\n';
  else
    std::cout << r.to_json().dump(2) << "\n";
  if (!r.passed()) {
    std::cerr << "discrepancy: cusp lattice checks failed\n";
    return 2;
  }
  return 0;
}

std::vector<BigInt> parse_tuple(const std::string& s) {
  std::vector<BigInt> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      out.emplace_back(item);
    } catch (const std::invalid_argument&) {
      throw Error("not an integer: '" + item + "'");
    }
  }
  return out;
}

int cmd_norm(const RunConfig& cfg) {
  json out = {{"N", std::to_string(cfg.n)}, {"p", std::to_string(cfg.p)}};
  std::string tsv;
  if (!cfg.eval.empty()) {
    auto c = parse_tuple(cfg.eval);
    auto v = classfield::norm_form_value(c, cfg.n, cfg.p);
    out["eval"] = {{"coeffs", strings(c)}, {"norm", v.get_str()}};
    tsv += "norm\t" + v.get_str() + "\n";
  }
  if (cfg.search) {
    BigInt target(*cfg.search);
    auto hit = classfield::norm_search(target, cfg.n, cfg.p, cfg.bound, cfg.threads);
    out["search"] = {{"target", target.get_str()},
                     {"bound", std::to_string(cfg.bound)},
                     {"witness", hit ? json(strings(*hit)) : json(nullptr)}};
    tsv += "witness\t" + (hit ? join(*hit) : std::string("not found within bound")) + "\n";
  }
  if (cfg.symbolic) {
    std::vector<std::string> vars;
    for (std::int64_t i = 0; i < cfg.p; ++i)
      vars.push_back(cfg.p <= 26 ? std::string(1, static_cast<char>('a' + i)) : "c" + std::to_string(i));
    auto form = classfield::norm_form_symbolic(cfg.n, cfg.p);
    out["symbolic"] = classfield::to_string(form, vars);
    tsv += "symbolic\t" + out["symbolic"].get<std::string>() + "\n";
  }
  if (cfg.eval.empty() && !cfg.search && !cfg.symbolic) throw Error("norm needs --eval, --search or --symbolic");
  std::cout << (cfg.format == Format::Tsv ? tsv : out.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Eisenstein congruences at level N^2 and arithmetic of Q(N^(1/p))"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::map<std::string, Format> formats{{"json", Format::Json}, {"tsv", Format::Tsv}};

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "Output format")->transform(CLI::CheckedTransformer(formats));
    sub->add_option("--threads", cfg.threads, "Worker threads")->check(CLI::Range(1u, 256u));
  };
  auto n_and_p = [&](CLI::App* sub) {
    sub->add_option("--N", cfg.n, "Prime N")->check(CLI::PositiveNumber);
    sub->add_option("--p", cfg.p, "Prime p")->check(CLI::PositiveNumber);
  };

  auto* survey = app.add_subcommand("survey", "Eisenstein locus for every prime N <= N-max");
  survey->add_option("--p", cfg.p_list, "Primes p >= 5")->delimiter(',');
  survey->add_option("--N-max", cfg.n_max, "Largest N");
  survey->add_option("--sturm", cfg.sturm, "Number of Hecke operators (primes up to this bound)");
  survey->add_flag("--unsafe", cfg.unsafe, "Allow --sturm below the Sturm bound");
  common(survey);

  auto* table = app.add_subcommand("table", "Coefficients and flags of the congruent newform");
  n_and_p(table);
  table->add_option("--ell-max", cfg.ell_max, "Largest prime l (default: Sturm bound)");
  table->add_option("--cache-dir", cfg.cache_dir, "Directory for cached Hecke matrices");
  common(table);

  auto* splitting = app.add_subcommand("splitting", "Splitting of primes l in Q(N^(1/p))");
  n_and_p(splitting);
  splitting->add_option("--ell-max", cfg.ell_max, "Largest prime l (default 100)");
  common(splitting);

  auto* cusps = app.add_subcommand("verify-cusps", "Check the rank-2 cusp lattice and its U_N action");
  n_and_p(cusps);
  cusps->add_option("--ell-max", cfg.ell_max, "Prime budget for T_l (default 200)");
  common(cusps);

  auto* norm = app.add_subcommand("norm", "Norms from Q(N^(1/p))");
  n_and_p(norm);
  norm->add_option("--eval", cfg.eval, "Comma-separated coefficients c_0,...,c_{p-1}");
  norm->add_option("--search", cfg.search, "Target norm");
  norm->add_option("--bound", cfg.bound, "Box bound for --search")->check(CLI::NonNegativeNumber);
  norm->add_flag("--symbolic", cfg.symbolic, "Print the norm form");
  common(norm);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*survey) return cmd_survey(cfg);
    if (*table) return cmd_table(cfg);
    if (*splitting) return cmd_splitting(cfg);
    if (*cusps) return cmd_verify_cusps(cfg);
    if (*norm) return cmd_norm(cfg);
  } catch (const DiscrepancyError& e) {
    std::cerr << "discrepancy: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
