#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <sstream>
#include <map>
#include <string>
#include <vector>

#include "thr/acceptance.hpp"
#include "thr/cubes.hpp"
#include "thr/dihedral.hpp"
#include "thr/error.hpp"
#include "thr/spec_format.hpp"
#include "thr/thr_pi0.hpp"

using json = nlohmann::ordered_json;
using namespace thr;

namespace {

constexpr int kSchemaVersion = 1;

json header(const std::string& command) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  return j;
}

json group_json(const FgAbGroup& g) {
  json t = json::array();
  for (const auto& f : g.invariant_factors()) t.push_back(f.get_str());
  return {{"free_rank", g.free_rank()}, {"torsion", t}, {"text", g.describe()}};
}

json matrix_json(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(m(i, j).get_str());
    rows.push_back(r);
  }
  return rows;
}

json homology_json(const std::map<long, FgAbGroup>& h) {
  json out = json::object();
  for (const auto& [q, g] : h) out[std::to_string(q)] = group_json(g);
  return out;
}

// The matrix of f between the simplified presentations of its source and
// target, entries reduced.
IntMatrix simplified_matrix(const GroupHom& f) {
  const Simplified s = simplify(f.source());
  const Simplified t = simplify(f.target());
  const GroupHom g = s.from.then(f).then(t.to);
  IntMatrix m(g.matrix().rows(), g.matrix().cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const IntVector r = t.group.canonical(g.matrix().row(i));
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = r[j];
  }
  return m;
}

std::string matrix_text(const IntMatrix& m) { return m.rows() == 0 || m.cols() == 0 ? "[]" : m.to_string(); }

void emit(const json& j, bool as_json, const std::string& text) {
  if (as_json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

// ---------------------------------------------------------------------------

int cmd_pi0thr(const std::string& path, bool as_json) {
  const ParsedSpec spec = load_spec(path);
  if (!spec.ring) throw InputError(path + ": no ring in spec file");
  std::cerr << "computing pi0 THR of " << spec.name << "\n";
  const Pi0Thr p = pi0_thr(*spec.ring);
  const MackeyZ2& m = p.mackey.mackey;
  const SesReport ses = ses_check(*spec.ring);
  const AlphaReport alpha = is_alpha_iso(*spec.ring);
  const IntMatrix res = simplified_matrix(m.res), tran = simplified_matrix(m.tran), w = simplified_matrix(m.w);

  json j = header("pi0thr");
  j["ring"] = spec.name;
  j["underlying"] = group_json(m.e);
  j["fixed"] = group_json(m.g);
  j["restriction"] = matrix_json(res);
  j["transfer"] = matrix_json(tran);
  j["involution"] = matrix_json(w);
  j["ses_exact"] = ses.exact;
  j["alpha_iso"] = alpha.alpha_iso;
  j["frobenius_surjective"] = alpha.frobenius_surjective;

  std::ostringstream t;
  t << "ring: " << spec.name << "\n"
    << "underlying level: " << m.e.describe() << "\n"
    << "fixed level: " << m.g.describe() << "\n"
    << "restriction (fixed -> underlying): " << matrix_text(res) << "\n"
    << "transfer (underlying -> fixed): " << matrix_text(tran) << "\n"
    << "involution: " << matrix_text(w) << "\n"
    << "0 -> 2A -> fixed -> Frobenius-twisted square -> 0 exact: " << (ses.exact ? "yes" : "no") << "\n"
    << "alpha isomorphism: " << (alpha.alpha_iso ? "yes" : "no")
    << " (Frobenius surjective: " << (alpha.frobenius_surjective ? "yes" : "no") << ")\n";
  emit(j, as_json, t.str());
  return 0;
}

int cmd_basechange(const std::string& pa, const std::string& pb, const std::vector<std::string>& images,
                   bool as_json) {
  const ParsedSpec a = load_spec(pa), b = load_spec(pb);
  if (!a.ring || !b.ring) throw InputError("basechange: both spec files must define rings");
  std::map<std::string, std::string> given;
  for (const auto& s : images) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw InputError("--image expects GEN=EXPR, got '" + s + "'");
    given[s.substr(0, eq)] = s.substr(eq + 1);
  }
  const auto& names = a.ring->names();
  IntMatrix m(0, b.ring->n_gens());
  for (std::size_t i = 0; i < a.ring->n_gens(); ++i) {
    const std::string name = i < names.size() ? names[i] : std::to_string(i);
    auto it = given.find(name);
    if (it == given.end()) {
      if (a.ring->n_gens() == 1 && name == "1") {
        m.append_row(b.ring->one());
        continue;
      }
      throw InputError("basechange: no image given for generator '" + name + "'");
    }
    m.append_row(parse_element(*b.ring, it->second));
    given.erase(it);
  }
  if (!given.empty()) throw InputError("basechange: '" + given.begin()->first + "' is not a generator of the source");
  std::cerr << "comparing base change " << a.name << " -> " << b.name << "\n";
  const BaseChangeReport r = verify_etale_base_change(make_ring_hom(*a.ring, *b.ring, m));

  json j = header("basechange");
  j["source"] = a.name;
  j["target"] = b.name;
  j["iso"] = r.iso;
  j["base_changed_fixed"] = group_json(r.changed.g);
  j["target_fixed"] = group_json(r.target.g);
  j["base_changed_underlying"] = group_json(r.changed.e);
  j["target_underlying"] = group_json(r.target.e);
  j["obstruction"] = r.obstruction;

  std::ostringstream t;
  t << a.name << " -> " << b.name << "\n"
    << "base-changed levels: " << r.changed.e.describe() << ", " << r.changed.g.describe() << "\n"
    << "target levels: " << r.target.e.describe() << ", " << r.target.g.describe() << "\n"
    << "isomorphism: " << (r.iso ? "yes" : "no") << "\n";
  if (!r.obstruction.empty()) t << "obstruction: " << r.obstruction << "\n";
  emit(j, as_json, t.str());
  return 0;
}

int cmd_nerve(const std::string& path, const std::vector<std::string>& weights, std::size_t q_max, bool homology,
              bool fixed, bool validate, bool as_json) {
  const ParsedSpec spec = load_spec(path);
  if (!spec.monoid) throw InputError(path + ": no monoid in spec file");
  const AffineMonoid& m = *spec.monoid;
  std::vector<IntVector> ws;
  for (const auto& w : weights) {
    IntVector v;
    std::string cur;
    for (char c : w + ",") {
      if (c == ',') {
        Integer x;
        if (cur.empty() || x.set_str(cur[0] == '+' ? cur.substr(1) : cur, 10) != 0)
          throw InputError("weight: expected comma-separated integers, got '" + w + "'");
        v.push_back(x);
        cur.clear();
      } else if (c != ' ') {
        cur += c;
      }
    }
    if (v.size() != m.rank()) throw InputError("weight '" + w + "' has the wrong rank");
    ws.push_back(v);
  }
  std::cerr << "enumerating the weight pieces through degree " << q_max << "\n";
  const TruncDihedralSet x = dihedral_nerve_piece(m, ws, q_max);

  json j = header("nerve");
  j["monoid"] = spec.name;
  json wj = json::array();
  for (const auto& v : ws) wj.push_back(vector_to_string(v));
  j["weights"] = wj;
  j["q_max"] = q_max;
  json sizes = json::array(), nd = json::array();
  std::ostringstream t;
  t << "monoid: " << spec.name << "\n" << "degree  simplices  nondegenerate\n";
  for (std::size_t q = 0; q <= x.q_max; ++q) {
    sizes.push_back(x.size(q));
    nd.push_back(x.nondegenerate(q).size());
    t << q << "  " << x.size(q) << "  " << x.nondegenerate(q).size() << "\n";
  }
  j["simplices"] = sizes;
  j["nondegenerate"] = nd;
  if (x.nondegenerate_bound) j["nondegenerate_bound"] = *x.nondegenerate_bound;
  if (homology) {
    const ChainComplex c = normalized_chains(x);
    const auto h = homology_table(c);
    j["homology"] = homology_json(h);
    j["homology_valid_through"] = c.valid_hi == kAllDegrees ? json("all") : json(c.valid_hi);
    t << "homology: " << describe_homology(h)
      << (c.valid_hi == kAllDegrees ? "" : " (through degree " + std::to_string(c.valid_hi) + ")") << "\n";
  }
  if (fixed) {
    const TruncDihedralSet y = x.q_max >= 3 ? x : dihedral_nerve_piece(m, ws, 3);
    const Pi0 p = pi0(fixed_subset(sd_sigma(y)));
    j["fixed_pi0"] = p.count;
    t << "components of the sigma-fixed points: " << p.count << "\n";
  }
  if (validate) {
    const ValidationReport v = validate_structure(x);
    j["validation"] = {{"ok", v.ok}, {"checks", v.checks}, {"first_violation", v.first_violation}};
    t << "structure identities: " << (v.ok ? "all hold" : "violated: " + v.first_violation) << " (" << v.checks
      << " checked)\n";
    if (!v.ok) {
      emit(j, as_json, t.str());
      return 4;
    }
  }
  emit(j, as_json, t.str());
  return 0;
}

int cmd_projective(const std::string& which, long window, bool as_json) {
  std::cerr << "assembling the projective report for " << which << "\n";
  ProjectiveReport r;
  if (which == "1")
    r = p1_report(window > 0 ? window : 5);
  else if (which == "sigma")
    r = psigma_report();
  else if (which == "2" || which == "3" || which == "4")
    r = pn_report(static_cast<std::size_t>(std::stoul(which)), window > 0 ? window : 3);
  else
    throw InputError("projective: expected one of 1, sigma, 2, 3, 4");

  json j = header("projective");
  j["space"] = r.space;
  j["ok"] = r.ok;
  json ws = json::array();
  for (const auto& w : r.weights)
    ws.push_back({{"weight", vector_to_string(w.weight)},
                  {"method", w.method},
                  {"certified", w.certified},
                  {"homology", homology_json(w.homology)},
                  {"substitutions", w.substitutions}});
  j["weights"] = ws;
  json cs = json::array();
  for (const auto& c : r.checks) cs.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
  j["checks"] = cs;
  json ss = json::array();
  for (const auto& [name, h] : r.summands) ss.push_back({{"name", name}, {"homology", homology_json(h)}});
  j["summands"] = ss;
  j["substitutions"] = r.substitutions;

  std::ostringstream t;
  t << "space: " << r.space << "\n";
  std::size_t certified = 0;
  for (const auto& w : r.weights) certified += w.certified;
  t << "weights: " << r.weights.size() << " (" << certified << " certified)\n";
  for (const auto& w : r.weights) {
    bool nonzero = false;
    for (const auto& [q, g] : w.homology) nonzero = nonzero || !g.is_trivial();
    if (nonzero || !w.certified)
      t << "  weight " << vector_to_string(w.weight) << " [" << w.method << "]: " << describe_homology(w.homology)
        << (w.certified ? "" : " (not certified)") << "\n";
  }
  for (const auto& [name, h] : r.summands) t << "summand " << name << ": " << describe_homology(h) << "\n";
  std::size_t failed = 0;
  for (const auto& c : r.checks)
    if (!c.ok) {
      ++failed;
      t << "FAILED " << c.name << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
    }
  t << "checks: " << r.checks.size() - failed << " of " << r.checks.size() << " pass\n";
  for (const auto& s : r.substitutions) t << "substitution: " << s << "\n";
  emit(j, as_json, t.str());
  return r.ok ? 0 : 4;
}

int cmd_selftest(bool as_json) {
  const auto results = run_acceptance([](const std::string& s) { std::cerr << s << "\n"; });
  json j = header("selftest");
  json rs = json::array();
  bool all = true;
  std::ostringstream t;
  for (const auto& r : results) {
    all = all && r.pass;
    rs.push_back({{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}});
    t << format_result(r) << "\n";
  }
  j["results"] = rs;
  j["all_pass"] = all;
  emit(j, as_json, t.str());
  return all ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations around real topological Hochschild homology"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "table";
  app.add_option("--format", format, "table or json")->check(CLI::IsMember({"table", "json"}));

  std::string spec_a, spec_b;
  auto* pi0 = app.add_subcommand("pi0thr", "pi0 THR of a ring with trivial involution, as a Mackey functor");
  pi0->add_option("spec", spec_a, "ring spec file")->required()->check(CLI::ExistingFile);

  std::vector<std::string> images;
  auto* bc = app.add_subcommand("basechange", "compare pi0 THR(A) (x)_A B with pi0 THR(B)");
  bc->add_option("source", spec_a, "ring spec file for A")->required()->check(CLI::ExistingFile);
  bc->add_option("target", spec_b, "ring spec file for B")->required()->check(CLI::ExistingFile);
  bc->add_option("--image", images, "GEN=EXPR, the image of a generator of A");

  std::vector<std::string> weights;
  std::size_t q_max = 4;
  bool want_h = false, want_fixed = false, want_validate = false;
  auto* nv = app.add_subcommand("nerve", "weight pieces of the dihedral nerve of an affine monoid");
  nv->add_option("spec", spec_a, "monoid spec file")->required()->check(CLI::ExistingFile);
  nv->add_option("--weight", weights, "weight as comma-separated integers (repeatable)")->required();
  nv->add_option("--qmax", q_max, "truncation degree")->check(CLI::PositiveNumber);
  nv->add_flag("--homology", want_h, "homology of the normalized chains");
  nv->add_flag("--fixed-pi0", want_fixed, "components of the sigma-fixed points after subdivision");
  nv->add_flag("--validate", want_validate, "check every structure identity");

  std::string which;
  long window = 0;
  auto* pr = app.add_subcommand("projective", "weight-by-weight cube assembly for projective spaces");
  pr->add_option("space", which, "1, sigma, 2, 3 or 4")->required();
  pr->add_option("--window", window, "weight window")->check(CLI::PositiveNumber);

  auto* st = app.add_subcommand("selftest", "run the acceptance suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  const bool as_json = format == "json";
  try {
    if (*pi0) return cmd_pi0thr(spec_a, as_json);
    if (*bc) return cmd_basechange(spec_a, spec_b, images, as_json);
    if (*nv) return cmd_nerve(spec_a, weights, q_max, want_h, want_fixed, want_validate, as_json);
    if (*pr) return cmd_projective(which, window, as_json);
    if (*st) return cmd_selftest(as_json);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 3;
  } catch (const CertificateError& e) {
    std::cerr << "certificate failure: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
