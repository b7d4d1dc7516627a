#include <charconv>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wallkit/cache.hpp"
#include "wallkit/dot.hpp"
#include "wallkit/io.hpp"
#include "wallkit/wallkit.hpp"

using namespace wallkit;
using io::json;

namespace {

enum Exit { kOk = 0, kInvalid = 1, kViolation = 2, kResource = 3 };

struct Common {
  std::string family = "a2even";
  int ell = 2;
  std::string convention;
  unsigned threads = 1;
  unsigned long seed = 0;
  int cap = kDefaultEnumerationCap;
  std::string json_out;

  AffineType type() const { return AffineType(parse_family(family), ell); }
  Convention conv() const { return convention.empty() ? default_convention(type()) : parse_convention(convention); }
};

int parse_int(const std::string& s, const char* what) {
  int v = 0;
  const auto* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || p != end) throw InvalidInput(std::string("bad ") + what + " '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

std::vector<int> parse_list(const std::string& s, const char* what) {
  std::vector<int> v;
  for (const auto& x : split(s, ',')) v.push_back(parse_int(x, what));
  return v;
}

Wall parse_wall(const AffineType& t, const std::string& s) {
  if (s.empty() || s == "empty" || s == "()") return Wall(t);
  return Wall(t, parse_list(s, "wall part"));
}

RootVec parse_beta(const CartanData& cd, const std::string& s) {
  RootVec b(cd.rank());
  for (const auto& item : split(s, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw InvalidInput("beta entries look like index:multiplicity, got '" + item + "'");
    const int i = parse_int(item.substr(0, colon), "beta index");
    const int m = parse_int(item.substr(colon + 1), "beta multiplicity");
    if (i < 0 || i >= cd.rank()) throw InvalidInput("beta index " + std::to_string(i) + " outside the index set");
    if (m < 0) throw InvalidInput("negative beta multiplicity");
    b[static_cast<std::size_t>(i)] += m;
  }
  return b;
}

std::vector<Gen> parse_word(const std::string& s) {
  std::vector<Gen> w;
  for (const auto& tok : split(s, ',')) {
    if (tok.size() < 2 || (tok[0] != 'e' && tok[0] != 'f')) throw InvalidInput("bad generator '" + tok + "'");
    w.push_back({tok[0] == 'e' ? Gen::E : Gen::F, parse_int(tok.substr(1), "generator index")});
  }
  return w;
}

std::string seq_string(const std::vector<int>& v) {
  std::string s = "(";
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
  return s + ")";
}

// With --json -, stdout carries only the JSON document; the text report is dropped.
std::streambuf* g_stdout = nullptr;

void emit_json(const std::string& path, const json& j) {
  if (path == "-") {
    std::ostream out(g_stdout ? g_stdout : std::cout.rdbuf());
    out << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path);
  out << j.dump(2) << "\n";
}

void add_common(CLI::App* sub, Common& c, bool with_convention) {
  sub->add_option("--family", c.family, "a2even or d2")->capture_default_str();
  sub->add_option("--ell", c.ell, "rank ell >= 2")->capture_default_str();
  if (with_convention) sub->add_option("--convention", c.convention, "printed, offset-none, offset-in-R, offset-occupied");
  sub->add_option("--threads", c.threads, "worker threads")->capture_default_str();
  sub->add_option("--seed", c.seed, "seed for randomized self-tests (results never depend on it)");
  sub->add_option("--cap", c.cap, "block-count cap for enumerations")->capture_default_str();
  sub->add_option("--json", c.json_out, "write JSON to a file ('-' for stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wallkit: Young walls, standard tableaux and graded dimensions"};
  app.require_subcommand(1);

  Common common;

  auto* walls = app.add_subcommand("walls", "enumerate proper Young walls");
  int blocks = -1;
  std::string beta_s;
  add_common(walls, common, false);
  walls->add_option("--blocks", blocks, "number of blocks");
  walls->add_option("--beta", beta_s, "residue content, e.g. 0:2,1:2,2:1");

  auto* tabs = app.add_subcommand("tableaux", "standard tableaux of a wall");
  std::string wall_s, nu_s, nu_prime_s;
  add_common(tabs, common, true);
  tabs->add_option("--wall", wall_s, "block counts, rightmost column first, e.g. 5,1")->required();
  tabs->add_option("--nu", nu_s, "restrict to a residue sequence");

  auto* poset = app.add_subcommand("poset", "weak order on ST(Y)");
  std::string dot_out;
  add_common(poset, common, false);
  poset->add_option("--wall", wall_s, "block counts")->required();
  poset->add_option("--dot", dot_out, "write the Hasse diagram as DOT ('-' for stdout)");

  auto* fock = app.add_subcommand("fock", "Fock space action");
  fock->require_subcommand(1);
  auto* apply = fock->add_subcommand("apply", "apply a word of Chevalley generators");
  std::string word_s, start_s = "empty";
  add_common(apply, common, true);
  apply->add_option("--word", word_s, "operator product, e.g. e0,f0 (rightmost acts first)")->required();
  apply->add_option("--start", start_s, "starting wall ('empty' for the vacuum)")->capture_default_str();
  auto* axioms = fock->add_subcommand("axioms", "check the module relations on small walls");
  int axiom_blocks = 6;
  add_common(axioms, common, true);
  axioms->add_option("--max-blocks", axiom_blocks, "largest wall size checked")->capture_default_str();

  auto* dim = app.add_subcommand("dim", "graded dimensions");
  std::string method_s;
  bool q1 = false;
  add_common(dim, common, true);
  dim->add_option("--beta", beta_s, "residue content, e.g. 0:2,1:2,2:1")->required();
  dim->add_option("--nu", nu_s, "left residue sequence");
  dim->add_option("--nu-prime", nu_prime_s, "right residue sequence");
  dim->add_option("--method", method_s, "tableau, tableau-factored or fock (pair dimensions)");
  dim->add_flag("--q1", q1, "also print the ungraded dimension");

  auto* verify = app.add_subcommand("verify", "calibration and identity suite");
  int max_blocks = 8;
  add_common(verify, common, false);
  verify->add_option("--max-blocks", max_blocks, "largest wall size checked")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalid;
  }
  if (common.json_out == "-") {
    if (dot_out == "-") {
      std::cerr << "error: --dot - and --json - both write to stdout\n";
      return kInvalid;
    }
    g_stdout = std::cout.rdbuf(nullptr);
  }
  struct Restore {
    ~Restore() {
      if (g_stdout) std::cout.rdbuf(g_stdout);
    }
  } restore;

  try {
    if (common.threads == 0) common.threads = default_threads();
    const AffineType t = common.type();
    const CartanData cd(t);

    if (*walls) {
      if ((blocks < 0) == beta_s.empty()) throw InvalidInput("give exactly one of --blocks and --beta");
      const auto ys = beta_s.empty() ? enumerate_walls(t, blocks, common.cap)
                                     : enumerate_walls(cd, parse_beta(cd, beta_s), common.cap);
      json arr = json::array();
      for (const auto& y : ys) {
        std::cout << y.to_string() << (is_reduced(y) ? "" : "  not reduced") << "\n";
        arr.push_back(io::to_json(y));
      }
      if (!common.json_out.empty()) emit_json(common.json_out, arr);
      return kOk;
    }

    if (*tabs) {
      const Wall y = parse_wall(t, wall_s);
      const Convention conv = common.conv();
      std::optional<std::vector<int>> nu;
      if (!nu_s.empty()) nu = parse_list(nu_s, "residue");
      json arr = json::array();
      for (const auto& T : enumerate_st(y, nu, common.cap)) {
        const auto p = EF_prime(T);
        const auto ef = EF_inductive(cd, T, conv);
        const auto dc = deg_codeg(cd, T, conv);
        std::cout << reading_word(T).to_string() << "  res=" << seq_string(residue_seq(T)) << "  E'=" << p.E
                  << "  F'=" << p.F << "  deg=" << dc.deg << "  codeg=" << dc.codeg
                  << (is_st_infinity(T) ? "  ST_inf" : "") << "\n";
        json j = io::to_json(T);
        j["word"] = io::to_json(reading_word(T));
        j["residues"] = residue_seq(T);
        j["E_prime"] = io::to_json(p.E);
        j["F_prime"] = io::to_json(p.F);
        j["E"] = io::to_json(ef.E);
        j["F"] = io::to_json(ef.F);
        j["deg"] = dc.deg;
        j["codeg"] = dc.codeg;
        j["st_infinity"] = is_st_infinity(T);
        arr.push_back(j);
      }
      if (!common.json_out.empty())
        emit_json(common.json_out, json{{"wall", io::to_json(y)},
                                        {"convention", std::string(convention_name(conv))},
                                        {"tableaux", arr}});
      return kOk;
    }

    if (*poset) {
      const Wall y = parse_wall(t, wall_s);
      const Poset P = weak_order_poset(y, common.cap);
      int top = 0;
      for (int r : P.rank) top = std::max(top, r);
      if (dot_out != "-") {
        std::cout << "nodes " << P.size() << "  covers " << P.covers.size() << "  ranks 0.." << top << "\n";
        std::cout << "min " << P.words[static_cast<std::size_t>(P.min)].to_string() << "  max "
                  << P.words[static_cast<std::size_t>(P.max)].to_string() << "\n";
        std::cout << "graded, lattice, generalized quotient: verified\n";
      }
      if (!dot_out.empty()) {
        if (dot_out == "-") {
          std::cout << to_dot(P);
        } else {
          std::ofstream out(dot_out);
          if (!out) throw InvalidInput("cannot write " + dot_out);
          out << to_dot(P);
        }
      }
      if (!common.json_out.empty()) emit_json(common.json_out, io::to_json(P));
      return kOk;
    }

    if (*apply) {
      const Convention conv = common.conv();
      const FockVector v = apply_word(cd, parse_word(word_s), FockVector(parse_wall(t, start_s)), conv);
      json j = io::to_json(v);
      j["convention"] = std::string(convention_name(conv));
      emit_json(common.json_out.empty() ? "-" : common.json_out, j);
      return kOk;
    }

    if (*axioms) {
      const auto rep = check_module_axioms(t, axiom_blocks, common.conv(), common.threads, common.cap);
      std::cout << "axioms " << t.name() << " " << convention_name(rep.convention) << " up to " << axiom_blocks
                << " blocks: " << (rep.ok() ? "ok" : std::to_string(rep.failures()) + " failures") << "\n";
      if (const auto w = rep.first_counterexample()) std::cout << "first counterexample: " << *w << "\n";
      if (!common.json_out.empty()) emit_json(common.json_out, io::to_json(rep));
      return rep.ok() ? kOk : kViolation;
    }

    if (*dim) {
      const RootVec beta = parse_beta(cd, beta_s);
      const Convention conv = common.conv();
      if (nu_s.empty() != nu_prime_s.empty()) throw InvalidInput("--nu and --nu-prime go together");
      if (!nu_s.empty()) {
        const auto nu = parse_list(nu_s, "residue");
        const auto nup = parse_list(nu_prime_s, "residue");
        const DimMethod m = method_s.empty() ? DimMethod::tableau : parse_method(method_s);
        const LaurentPoly p = graded_dim_pair(cd, beta, nu, nup, conv, m, common.cap);
        std::cout << p << "\n";
        json j{{"family", std::string(family_name(t.family))}, {"ell", t.ell}, {"beta", io::to_json(beta)},
               {"nu", nu}, {"nu_prime", nup}, {"convention", std::string(convention_name(conv))},
               {"method", std::string(method_name(m))}, {"value", io::to_json(p)}};
        if (q1) {
          const Int d = dim_q1(cd, beta, nu, nup, common.cap);
          std::cout << "q=1: " << d << "\n";
          j["dim_q1"] = io::coef_json(d);
        }
        if (!common.json_out.empty()) emit_json(common.json_out, j);
        return kOk;
      }
      if (!method_s.empty()) throw InvalidInput("--method applies to pair dimensions (--nu/--nu-prime)");
      const auto rep = cached_graded_dim_total(ResultCache::from_env(), cd, beta, conv, common.threads, common.cap);
      std::cout << rep.total() << "\n";
      json j = io::to_json(rep, t);
      if (q1) {
        const Int d = dim_q1(cd, beta, common.cap);
        std::cout << "q=1: " << d << "\n";
        j["dim_q1"] = io::coef_json(d);
      }
      if (!common.json_out.empty()) emit_json(common.json_out, j);
      return kOk;
    }

    if (*verify) {
      const auto rep = verify_suite(t, max_blocks, common.threads, common.cap);
      std::cout << "verify " << t.name() << " up to " << max_blocks << " blocks\n";
      std::cout << "check  ";
      for (const auto& col : rep.columns) std::cout << "  " << std::setw(16) << convention_name(col.convention);
      std::cout << "\n";
      for (std::size_t c = 0; c < kChecks.size(); ++c) {
        std::cout << std::left << std::setw(5) << kChecks[c].id << (kChecks[c].fatal ? "* " : "  ") << std::right;
        for (const auto& col : rep.columns) {
          const auto& ch = col.checks[c];
          std::string cell = ch.ok() ? "pass" : "FAIL " + std::to_string(ch.failed) + "/" + std::to_string(ch.checked);
          std::cout << "  " << std::setw(16) << cell;
        }
        std::cout << "  " << kChecks[c].name << "\n";
      }
      for (const auto& f : rep.findings) std::cout << "finding: " << f << "\n";
      if (rep.default_convention)
        std::cout << "default convention: " << convention_name(*rep.default_convention) << "\n";
      else
        std::cout << "no convention passes the convention-free checks (*)\n";
      for (const auto& col : rep.columns)
        for (const auto& ch : col.checks)
          if (!ch.ok() && ch.witness)
            std::cout << "witness [" << convention_name(col.convention) << " " << ch.id << "] " << *ch.witness << "\n";
      if (!common.json_out.empty()) emit_json(common.json_out, io::to_json(rep));
      bool identities_ok = true;
      for (const auto& col : rep.columns) identities_ok = identities_ok && col.convention_free_ok();
      return identities_ok && rep.default_convention ? kOk : kViolation;
    }
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const ResourceError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return kResource;
  } catch (const PropertyViolation& e) {
    std::cerr << "property violation: " << e.what() << "\n";
    return kViolation;
  } catch (const ConsistencyError& e) {
    std::cerr << "consistency error: " << e.what() << "\n";
    return kViolation;
  }
  return kOk;
}
