#include "thr/spec_format.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "thr/error.hpp"

namespace thr {

namespace {

std::vector<std::string> split_ws(std::string_view s) {
  std::istringstream in{std::string(s)};
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

Integer parse_integer(const std::string& tok) {
  Integer x;
  if (tok.empty() || x.set_str(tok[0] == '+' ? tok.substr(1) : tok, 10) != 0)
    throw InputError("expected an integer, got '" + tok + "'");
  return x;
}

IntVector parse_expr(const std::vector<std::string>& names, std::string_view expr) {
  std::string s;
  for (char c : expr)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw InputError("empty expression");
  IntVector out(names.size());
  std::size_t pos = 0;
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    }
    std::size_t end = pos;
    while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
    const std::string term = s.substr(pos, end - pos);
    if (term.empty()) throw InputError("malformed expression '" + std::string(expr) + "'");
    pos = end;

    Integer coeff = 1;
    std::string name = term;
    if (auto star = term.find('*'); star != std::string::npos) {
      coeff = parse_integer(term.substr(0, star));
      name = term.substr(star + 1);
    }
    auto it = std::find(names.begin(), names.end(), name);
    if (it != names.end()) {
      out[static_cast<std::size_t>(it - names.begin())] += sign * coeff;
    } else if (name == "0") {
      // contributes nothing
    } else {
      throw InputError("unknown generator '" + name + "' in expression '" + std::string(expr) + "'");
    }
  }
  return out;
}

IntMatrix parse_matrix(const std::vector<std::string>& toks, std::size_t cols) {
  std::vector<IntVector> rows(1);
  for (const auto& t : toks) {
    if (t == ";") {
      rows.emplace_back();
      continue;
    }
    rows.back().push_back(parse_integer(t));
  }
  for (const auto& r : rows)
    if (r.size() != cols)
      throw InputError("matrix row has " + std::to_string(r.size()) + " entries, expected " +
                       std::to_string(cols));
  return IntMatrix::from_rows(rows, cols);
}

}  // namespace

IntVector parse_element(const InvolutiveRing& ring, std::string_view expr) {
  return parse_expr(ring.names(), expr);
}

ParsedSpec parse_spec(std::string_view text) {
  ParsedSpec spec;
  std::vector<std::string> names;
  std::vector<Integer> orders;
  std::map<std::pair<std::size_t, std::size_t>, IntVector> table;
  std::optional<IntVector> unit;
  std::optional<std::vector<std::string>> involution;
  std::optional<std::size_t> monoid_rank;
  std::optional<std::vector<std::string>> monoid_gens, monoid_inv;

  std::istringstream in{std::string(text)};
  std::size_t lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    const std::string key = toks[0];
    toks.erase(toks.begin());
    try {
      auto need_gens = [&] {
        if (names.empty()) throw InputError("'" + key + "' before 'generators'");
      };
      if (key == "name") {
        spec.name = line.substr(line.find("name") + 4);
        spec.name.erase(0, spec.name.find_first_not_of(" \t"));
      } else if (key == "generators") {
        if (toks.empty()) throw InputError("no generators listed");
        names = toks;
      } else if (key == "orders") {
        need_gens();
        if (toks.size() != names.size()) throw InputError("orders: expected one order per generator");
        orders.clear();
        for (const auto& t : toks) {
          Integer o = parse_integer(t);
          if (o < 0) throw InputError("orders: negative order");
          orders.push_back(o);
        }
      } else if (key == "table") {
        need_gens();
        if (toks.size() < 3) throw InputError("table: expected 'table a b expression'");
        auto idx = [&](const std::string& n) {
          auto it = std::find(names.begin(), names.end(), n);
          if (it == names.end()) throw InputError("table: unknown generator '" + n + "'");
          return static_cast<std::size_t>(it - names.begin());
        };
        std::size_t a = idx(toks[0]), b = idx(toks[1]);
        std::string expr;
        for (std::size_t i = 2; i < toks.size(); ++i) expr += toks[i];
        if (table.contains({a, b})) throw InputError("table: duplicate entry");
        table[{a, b}] = parse_expr(names, expr);
      } else if (key == "unit") {
        need_gens();
        std::string expr;
        for (const auto& t : toks) expr += t;
        unit = parse_expr(names, expr);
      } else if (key == "involution") {
        need_gens();
        involution = toks;
      } else if (key == "monoid.rank") {
        if (toks.size() != 1) throw InputError("monoid.rank: expected one integer");
        Integer r = parse_integer(toks[0]);
        if (r < 0 || r > 16) throw InputError("monoid.rank: out of range");
        monoid_rank = r.get_ui();
      } else if (key == "monoid.generators") {
        monoid_gens = toks;
      } else if (key == "monoid.involution") {
        monoid_inv = toks;
      } else {
        throw InputError("unknown directive '" + key + "'");
      }
    } catch (const InputError& e) {
      throw InputError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }

  if (!names.empty()) {
    const std::size_t n = names.size();
    if (orders.empty()) orders.assign(n, Integer(0));
    if (!unit) throw InputError("ring spec: missing 'unit'");
    std::vector<std::vector<IntVector>> tab(n, std::vector<IntVector>(n, IntVector(n)));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (auto it = table.find({i, j}); it != table.end())
          tab[i][j] = it->second;
        else if (auto jt = table.find({j, i}); jt != table.end())
          tab[i][j] = jt->second;
      }
    IntMatrix w = involution ? parse_matrix(*involution, n) : IntMatrix::identity(n);
    if (w.rows() != n) throw InputError("involution: expected " + std::to_string(n) + " rows");
    spec.ring = InvolutiveRing(FgAbGroup::from_orders(orders), std::move(tab), *unit, std::move(w), names);
  }
  if (monoid_rank || monoid_gens) {
    if (!monoid_rank) throw InputError("monoid spec: missing 'monoid.rank'");
    std::vector<IntVector> gens;
    if (monoid_gens && !monoid_gens->empty()) {
      IntMatrix g = parse_matrix(*monoid_gens, *monoid_rank);
      for (std::size_t i = 0; i < g.rows(); ++i) gens.push_back(g.row_vector(i));
    }
    IntMatrix w = monoid_inv ? parse_matrix(*monoid_inv, *monoid_rank) : IntMatrix::identity(*monoid_rank);
    if (w.rows() != *monoid_rank) throw InputError("monoid.involution: wrong number of rows");
    spec.monoid = AffineMonoid(*monoid_rank, std::move(gens), std::move(w));
  }
  if (!spec.ring && !spec.monoid) throw InputError("spec defines neither a ring nor a monoid");
  return spec;
}

ParsedSpec load_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_spec(buf.str());
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

}  // namespace thr
