#include "multinorm/io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace multinorm {

Rational parse_rational(std::string const& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(s));
    Integer num(s.substr(0, slash));
    Integer den(s.substr(slash + 1));
    if (den <= 0) throw InvalidEntry("parse_rational: denominator must be positive");
    return Rational(num, den);
  } catch (std::exception const&) {
    throw InvalidEntry("parse_rational: cannot parse '" + s + "'");
  }
}

std::string to_string(Rational const& r) {
  std::ostringstream os;
  if (denominator(r) == 1)
    os << numerator(r);
  else
    os << numerator(r) << "/" << denominator(r);
  return os.str();
}

namespace {

json rat_json(Rational const& r) { return json(to_string(r)); }

Rational rat_from(json const& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw InvalidEntry("expected integer or 'p/q' string");
}

}  // namespace

json to_json(ExponentMatrix const& E) {
  json rows = json::array();
  for (int j = 0; j < E.n(); ++j) {
    json row = json::array();
    for (int k = 0; k < E.n(); ++k) row.push_back(rat_json(E(j, k)));
    rows.push_back(row);
  }
  return json{{"n", E.n()}, {"entries", rows}};
}

json to_json(PartialExponentMatrix const& B) {
  json rows = json::array();
  for (int j = 0; j < B.n(); ++j) {
    json row = json::array();
    for (int k = 0; k < B.n(); ++k)
      row.push_back(B(j, k).is_inf() ? json("inf") : rat_json(B(j, k).value()));
    rows.push_back(row);
  }
  return json{{"n", B.n()}, {"entries", rows}};
}

ExponentMatrix matrix_from_json(json const& j) {
  int n = j.at("n").get<int>();
  ExponentMatrix E(n);
  auto const& rows = j.at("entries");
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) E(r, c) = rat_from(rows.at(r).at(c));
  return E;
}

PartialExponentMatrix partial_matrix_from_json(json const& j) {
  int n = j.at("n").get<int>();
  PartialExponentMatrix B(n);
  auto const& rows = j.at("entries");
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      auto const& cell = rows.at(r).at(c);
      if (cell.is_string() && cell.get<std::string>() == "inf")
        B(r, c) = ExtRational::infinity();
      else
        B(r, c) = ExtRational(rat_from(cell));
    }
  return B;
}

json to_json(ConeSpec const& C) {
  json cs = json::array();
  for (auto const& c : C.constraints)
    cs.push_back(json{{"j", c.j + 1}, {"k", c.k + 1}, {"coef", rat_json(c.coef)},
                      {"strict", c.strict}});
  return json{{"n", C.n}, {"constraints", cs}};
}

ConeSpec cone_from_json(json const& j) {
  ConeSpec C;
  C.n = j.at("n").get<int>();
  for (auto const& c : j.at("constraints"))
    C.constraints.push_back({c.at("j").get<int>() - 1, c.at("k").get<int>() - 1,
                             rat_from(c.at("coef")),
                             c.contains("strict") ? c.at("strict").get<bool>() : false});
  return C;
}

json to_json(BlockDecomposition const& dec) {
  json blocks = json::array();
  for (auto const& b : dec.blocks) {
    json d = json::array();
    for (auto const& x : b.d) d.push_back(rat_json(x));
    blocks.push_back(json{{"size", b.size}, {"d", d}});
  }
  return json{{"blocks", blocks}};
}

BlockDecomposition decomposition_from_json(json const& j) {
  std::vector<std::vector<Rational>> be;
  for (auto const& b : j.at("blocks")) {
    std::vector<Rational> d;
    if (b.contains("d"))
      for (auto const& x : b.at("d")) d.push_back(rat_from(x));
    else
      d.assign(b.at("size").get<int>(), Rational(1));
    if (b.contains("size") && static_cast<int>(d.size()) != b.at("size").get<int>())
      throw DimensionMismatch("decomposition: size and d length differ");
    be.push_back(std::move(d));
  }
  return BlockDecomposition::make(be);
}

json to_json(MarkedPartition const& S) {
  json blocks = json::array();
  for (int r = 0; r < S.order(); ++r) {
    json members = json::array();
    for (int j : S.blocks[r]) members.push_back(j + 1);
    blocks.push_back(json{{"members", members}, {"mark", S.marks[r] + 1}});
  }
  return json{{"blocks", blocks}};
}

MarkedPartition partition_from_json(json const& j) {
  MarkedPartition S;
  for (auto const& b : j.at("blocks")) {
    std::vector<int> members;
    for (auto const& m : b.at("members")) members.push_back(m.get<int>() - 1);
    std::sort(members.begin(), members.end());
    S.blocks.push_back(members);
    S.marks.push_back(b.at("mark").get<int>() - 1);
  }
  return S;
}

json to_json(MatrixReport const& r) {
  json v = json::array();
  for (auto const& t : r.violations) v.push_back(json{t[0], t[1], t[2]});
  return json{{"basic_ok", r.basic_ok},
              {"violations", v},
              {"doubly_monotone", r.doubly_monotone},
              {"numeric_rank", r.numeric_rank},
              {"reduced_rank", r.reduced_rank}};
}

json to_json(Closure const& c) {
  json out;
  out["empty"] = c.empty;
  if (c.empty) {
    json cyc = json::array();
    for (int v : c.witness_cycle) cyc.push_back(v + 1);
    out["witness_cycle"] = cyc;
    return out;
  }
  out["closed"] = to_json(c.closed);
  out["connected"] = c.connected;
  json comps = json::array();
  for (auto const& comp : c.components) {
    json one = json::array();
    for (int v : comp) one.push_back(v + 1);
    comps.push_back(one);
  }
  out["components"] = comps;
  return out;
}

json to_json(Reduction const& r) {
  json classes = json::array();
  for (auto const& c : r.classes) {
    json one = json::array();
    for (int v : c) one.push_back(v + 1);
    classes.push_back(one);
  }
  json marks = json::array();
  for (int m : r.marks) marks.push_back(m + 1);
  json alpha = json::array();
  for (auto const& x : r.alpha) alpha.push_back(rat_json(x));
  return json{{"classes", classes}, {"marks", marks}, {"flat", to_json(r.flat)},
              {"alpha", alpha}};
}

json to_json(ShellReport const& r) {
  json gs = json::array();
  for (auto const& g : r.per_gamma) {
    json rows = json::array();
    for (auto const& row : g.rows)
      rows.push_back(json{{"shell", row.shell}, {"sup", row.sup}, {"samples", row.samples}});
    json gj = json::array();
    for (int v : g.gamma) gj.push_back(v);
    gs.push_back(json{{"gamma", gj},
                      {"rows", rows},
                      {"max_sup", g.max_sup},
                      {"median_sup", g.median_sup},
                      {"pass", g.pass}});
  }
  return json{{"threshold", r.threshold},
              {"pass", r.pass},
              {"aliasing_warning", r.aliasing_warning},
              {"per_gamma", gs}};
}

json to_json(WeakTypeProfile const& p) {
  json rows = json::array();
  for (size_t i = 0; i < p.t.size(); ++i)
    rows.push_back(json{{"t", p.t[i]}, {"count", p.count[i]}, {"normalized", p.normalized[i]}});
  return json{{"rows", rows}};
}

json to_json(MeasureReport const& r) {
  return json{{"ball_ratio", r.ball_ratio},
              {"tail_increment", r.tail_increment},
              {"shell_increment", r.shell_increment},
              {"damped_increment", r.damped_increment}};
}

json to_json(CompositionCase const& c) {
  json out;
  out["w"] = c.w;
  json wit = json::array();
  for (auto v : c.witness) wit.push_back(v);
  out["witness"] = wit;
  json istar = json::array(), jstar = json::array();
  for (auto const& b : c.I_star) {
    json one = json::array();
    for (int v : b) one.push_back(v + 1);
    istar.push_back(one);
  }
  for (auto const& b : c.J_star) {
    json one = json::array();
    for (int v : b) one.push_back(v + 1);
    jstar.push_back(one);
  }
  out["I_star"] = istar;
  out["J_star"] = jstar;
  json ss = json::array(), ts = json::array();
  for (int v : c.S_star) ss.push_back(v + 1);
  for (int v : c.T_star) ts.push_back(v + 1);
  out["S_star"] = ss;
  out["T_star"] = ts;
  out["B_W"] = to_json(c.B_W);
  out["empty_cone"] = c.empty_cone;
  if (!c.empty_cone) {
    out["E_STW"] = to_json(c.E_STW);
    out["connected"] = c.connected;
    out["inclusion_ok"] = c.inclusion_ok;
    out["projection_discrepancy"] = c.projection_discrepancy;
  }
  return out;
}

json to_json(CoverReport const& c) {
  return json{{"total_pairs", c.total_pairs},
              {"per_case", c.per_case},
              {"exact_partition", c.exact_partition}};
}

json to_json(GroupCompatReport const& r) {
  return json{{"d_nondecreasing", r.d_nondecreasing},
              {"doubly_monotone", r.doubly_monotone},
              {"lambda_monotone", r.lambda_monotone},
              {"derived_doubly_monotone", r.derived_doubly_monotone},
              {"all_ok", r.all_ok},
              {"failures", r.failures}};
}

json load_json_file(std::string const& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open file: " + path);
  json j;
  in >> j;
  return j;
}

std::string file_hash(std::string const& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open file: " + path);
  uint64_t h = 1469598103934665603ull;
  char c;
  while (in.get(c)) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

void write_field_csv(GridField const& f, std::string const& path) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot open file: " + path);
  for (int ax = 0; ax < f.ndim(); ++ax) out << "x" << ax + 1 << ",";
  out << "value\n";
  out.precision(12);
  std::vector<long long> idx;
  for (size_t i = 0; i < f.size(); ++i) {
    f.unflat(i, idx);
    for (int ax = 0; ax < f.ndim(); ++ax) out << f.coord(ax, idx[ax]) << ",";
    out << f.values()[i] << "\n";
  }
}

void write_field_raster(GridField const& f, std::string const& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot open file: " + path);
  uint32_t nd = static_cast<uint32_t>(f.ndim());
  out.write(reinterpret_cast<char const*>(&nd), 4);
  for (int ax = 0; ax < f.ndim(); ++ax) {
    uint32_t d = static_cast<uint32_t>(f.dims()[ax]);
    out.write(reinterpret_cast<char const*>(&d), 4);
  }
  for (int ax = 0; ax < f.ndim(); ++ax) {
    double h = f.spacing(ax);
    out.write(reinterpret_cast<char const*>(&h), 8);
  }
  out.write(reinterpret_cast<char const*>(f.values().data()),
            static_cast<std::streamsize>(f.size() * sizeof(double)));
}

}  // namespace multinorm
