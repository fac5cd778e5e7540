#include <fstream>
#include <sstream>

#include <json.hpp>

#include "carnot/io.hpp"

namespace carnot {

using nlohmann::ordered_json;

namespace {

ordered_json num_json(const mpz_class& z) {
  if (z.fits_slong_p()) return ordered_json(z.get_si());
  return ordered_json(z.get_str());
}

mpz_class json_int(const ordered_json& j, const char* what) {
  if (j.is_number_integer()) return mpz_class(static_cast<long>(j.get<int64_t>()));
  if (j.is_string()) return mpz_class(j.get<std::string>());
  throw ParseError(std::string("expected an integer for ") + what);
}

Rat json_rat(const ordered_json& term) {
  const mpz_class num = json_int(term.at("num"), "num");
  const mpz_class den = term.contains("den") ? json_int(term.at("den"), "den") : mpz_class(1);
  if (den == 0) throw ParseError("zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace

Rat rat_parse(const std::string& text) {
  if (text.empty()) throw ParseError("empty rational");
  try {
    Rat q(text);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw ParseError("malformed rational: " + text);
  }
}

std::string rat_str(const Rat& q) {
  std::ostringstream ss;
  ss << q;
  return ss.str();
}

AlgebraPtr load_algebra(std::istream& in) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad JSON: ") + e.what());
  }
  const int rank = doc.at("rank").get<int>();
  const int step = doc.at("step").get<int>();
  std::vector<int> layers = doc.at("layers").get<std::vector<int>>();
  std::vector<std::string> labels;
  if (doc.contains("labels")) labels = doc.at("labels").get<std::vector<std::string>>();

  int dim = 0;
  for (int d : layers) dim += d;

  // Collect both orientations to detect antisymmetry conflicts in the
  // document itself before normalizing to the upper triangle.
  std::map<std::pair<int, int>, std::map<int, Rat>> given;
  for (const auto& b : doc.value("brackets", ordered_json::array())) {
    const int i = b.at("i").get<int>() - 1;
    const int j = b.at("j").get<int>() - 1;
    if (i < 0 || j < 0 || i >= dim || j >= dim || i == j)
      throw ParseError("bracket indices out of range");
    auto& slot = given[{i, j}];
    for (const auto& t : b.at("terms")) {
      const int k = t.at("k").get<int>() - 1;
      if (k < 0 || k >= dim) throw ParseError("bracket target out of range");
      slot[k] += json_rat(t);
    }
  }

  std::map<std::pair<int, int>, SparseVec> upper;
  for (const auto& [ij, terms] : given) {
    const auto [i, j] = ij;
    if (i > j) continue;  // handled from the mirrored entry below
    SparseVec v;
    for (const auto& [k, q] : terms)
      if (q != 0) v.emplace_back(k, q);
    upper[{i, j}] = std::move(v);
  }
  for (const auto& [ij, terms] : given) {
    const auto [i, j] = ij;
    if (i < j) continue;
    auto& slot = upper[{j, i}];
    if (slot.empty() && given.find({j, i}) == given.end()) {
      for (const auto& [k, q] : terms)
        if (q != 0) slot.emplace_back(k, -q);
      continue;
    }
    // both (i,j) and (j,i) present: they must be exact negatives
    std::map<int, Rat> mirror;
    for (const auto& [k, q] : terms) mirror[k] = -q;
    std::map<int, Rat> existing;
    for (const auto& [k, q] : slot) existing[k] = q;
    if (mirror != existing)
      throw ValidationError(ValidationError::Kind::Antisymmetry, j + 1, i + 1,
                            terms.empty() ? 0 : terms.begin()->first + 1,
                            "brackets (" + std::to_string(j + 1) + "," + std::to_string(i + 1) +
                                ") and (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                ") are not antisymmetric");
  }

  return CarnotAlgebra::from_structure(rank, step, std::move(layers), std::move(labels),
                                       std::move(upper), /*validate_now=*/true);
}

AlgebraPtr load_algebra_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return load_algebra(in);
}

std::string dump_algebra(const CarnotAlgebra& alg) {
  ordered_json doc;
  doc["rank"] = alg.rank();
  doc["step"] = alg.step();
  doc["layers"] = alg.layer_dims();
  doc["labels"] = [&] {
    std::vector<std::string> l;
    for (int i = 0; i < alg.dim(); ++i) l.push_back(alg.label(i));
    return l;
  }();
  ordered_json brackets = ordered_json::array();
  for (int i = 0; i < alg.dim(); ++i)
    for (int j = i + 1; j < alg.dim(); ++j) {
      const auto& terms = alg.bracket_basis(i, j);
      if (terms.empty()) continue;
      ordered_json b;
      b["i"] = i + 1;
      b["j"] = j + 1;
      ordered_json ts = ordered_json::array();
      for (const auto& [k, q] : terms) {
        ordered_json t;
        t["k"] = k + 1;
        t["num"] = num_json(q.get_num());
        t["den"] = num_json(q.get_den());
        ts.push_back(std::move(t));
      }
      b["terms"] = std::move(ts);
      brackets.push_back(std::move(b));
    }
  doc["brackets"] = std::move(brackets);
  return doc.dump(2) + "\n";
}

namespace {

AlgebraPtr algebra_from_json(const ordered_json& spec, const std::string& base_dir) {
  if (spec.contains("free")) {
    const auto rs = spec.at("free").get<std::vector<int>>();
    if (rs.size() != 2) throw ParseError("algebra.free wants [rank, step]");
    return CarnotAlgebra::free_nilpotent(rs[0], rs[1]);
  }
  if (spec.contains("builtin")) {
    const std::string name = spec.at("builtin").get<std::string>();
    if (name == "heisenberg") return CarnotAlgebra::heisenberg();
    if (name == "hxh") return CarnotAlgebra::heisenberg_pair();
    throw ParseError("unknown builtin algebra " + name);
  }
  if (spec.contains("file")) {
    std::string path = spec.at("file").get<std::string>();
    if (!base_dir.empty() && !path.empty() && path[0] != '/') path = base_dir + "/" + path;
    return load_algebra_file(path);
  }
  throw ParseError("algebra spec needs free, builtin or file");
}

}  // namespace

PiecewiseControl load_control(std::istream& in, const std::string& base_dir) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad JSON: ") + e.what());
  }
  AlgebraPtr alg = algebra_from_json(doc.at("algebra"), base_dir);

  std::vector<Rat> breaks;
  for (const auto& b : doc.at("breakpoints")) {
    if (b.is_string())
      breaks.push_back(rat_parse(b.get<std::string>()));
    else
      breaks.push_back(Rat(b.get<long>()));
  }
  std::vector<RatVec> values;
  for (const auto& row : doc.at("values")) {
    RatVec v;
    for (const auto& c : row) {
      if (c.is_string())
        v.push_back(rat_parse(c.get<std::string>()));
      else
        v.push_back(Rat(c.get<long>()));
    }
    values.push_back(std::move(v));
  }
  return PiecewiseControl(alg, std::move(breaks), std::move(values));
}

PiecewiseControl load_control_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::string dir;
  const size_t slash = path.find_last_of('/');
  if (slash != std::string::npos) dir = path.substr(0, slash);
  return load_control(in, dir);
}

std::string dump_control(const PiecewiseControl& u) {
  ordered_json doc;
  const auto& alg = *u.algebra();
  if (alg.is_free())
    doc["algebra"] = {{"free", {alg.rank(), alg.step()}}};
  else
    doc["algebra"] = {{"builtin", "custom"}};
  std::vector<std::string> breaks;
  for (const auto& b : u.breakpoints()) breaks.push_back(rat_str(b));
  doc["breakpoints"] = breaks;
  ordered_json values = ordered_json::array();
  for (size_t k = 0; k < u.segments(); ++k) {
    std::vector<std::string> row;
    for (int i = 0; i < alg.rank(); ++i) row.push_back(rat_str(u.value(k)[i]));
    values.push_back(row);
  }
  doc["values"] = std::move(values);
  return doc.dump(2) + "\n";
}

void write_trajectory_csv(std::ostream& out, const std::vector<double>& times,
                          const std::vector<Vecd>& points) {
  if (times.size() != points.size()) throw std::invalid_argument("csv: size mismatch");
  const int n = points.empty() ? 0 : static_cast<int>(points.front().size());
  out << "t";
  for (int i = 1; i <= n; ++i) out << ",coord_" << i;
  out << "\n";
  out.precision(17);
  for (size_t k = 0; k < times.size(); ++k) {
    out << times[k];
    for (int i = 0; i < n; ++i) out << "," << points[k][i];
    out << "\n";
  }
}

}  // namespace carnot
