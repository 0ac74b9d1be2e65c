#include "ckit/problem.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "ckit/errors.hpp"

namespace ckit::cli {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw InputError(path + ": " + what);
}

const json& field(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(path, "missing field '" + key + "'");
  return *it;
}

Integer to_integer(const json& v, const std::string& path) {
  if (v.is_number_integer()) return v.is_number_unsigned() ? Integer(v.get<unsigned long>()) : Integer(v.get<long>());
  if (v.is_string()) {
    Integer out;
    if (out.set_str(v.get<std::string>(), 10) != 0) fail(path, "'" + v.get<std::string>() + "' is not an integer");
    return out;
  }
  fail(path, "expected an integer (number or decimal string)");
}

std::size_t to_count(const json& v, const std::string& path) {
  if (!v.is_number_integer() || v.get<long long>() < 0) fail(path, "expected a non-negative integer");
  return v.get<std::size_t>();
}

IntVector to_vector(const json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array of integers");
  IntVector out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(to_integer(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

IntMatrix to_matrix(const json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected a matrix (array of rows)");
  std::vector<IntVector> rows;
  for (std::size_t r = 0; r < v.size(); ++r) {
    rows.push_back(to_vector(v[r], path + "[" + std::to_string(r) + "]"));
    if (rows.back().size() != rows.front().size())
      fail(path, "row " + std::to_string(r) + " has " + std::to_string(rows.back().size()) +
                     " entries, row 0 has " + std::to_string(rows.front().size()));
  }
  return IntMatrix::from_rows(rows);
}

// ---------------------------------------------------------------------------
// finite groups

struct ParsedGroup {
  std::shared_ptr<const finite::FiniteGroup> group;
  // top-level components of a product: [first factor, factor count)
  std::vector<std::pair<std::size_t, std::size_t>> components;
  std::vector<std::shared_ptr<const finite::FiniteGroup>> component_groups;
};

ParsedGroup single(finite::FiniteGroup g) {
  auto p = std::make_shared<const finite::FiniteGroup>(std::move(g));
  return {p, {{0, p->factor_count()}}, {p}};
}

ParsedGroup parse_group(const json& desc, const std::string& path, const ParsedGroup* codomain) {
  if (desc.is_string()) {
    if (desc.get<std::string>() == "codomain" && codomain) return *codomain;
    fail(path, "unknown group reference '" + desc.get<std::string>() + "'");
  }
  if (!desc.is_object()) fail(path, "expected a group description object");
  const std::size_t cap = desc.contains("cap") ? to_count(desc["cap"], path + ".cap") : finite::default_closure_cap();
  if (desc.contains("builtin")) {
    const auto name = desc["builtin"].get<std::string>();
    if (name == "binary-icosahedral") return single(finite::binary_icosahedral());
    if (name == "cyclic") return single(finite::cyclic_group(to_count(field(desc, "order", path), path + ".order")));
    fail(path + ".builtin", "unknown built-in group '" + name + "'");
  }
  if (desc.contains("permutations")) {
    const std::size_t degree = to_count(field(desc, "degree", path), path + ".degree");
    std::vector<finite::Permutation> gens;
    const auto& list = desc["permutations"];
    if (!list.is_array()) fail(path + ".permutations", "expected an array of cycle strings");
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (!list[i].is_string()) fail(path + ".permutations[" + std::to_string(i) + "]", "expected a string");
      try {
        gens.push_back(finite::parse_cycles(list[i].get<std::string>(), degree));
      } catch (const InputError& e) {
        fail(path + ".permutations[" + std::to_string(i) + "]", e.what());
      }
    }
    return single(finite::close_permutations(gens, degree, cap));
  }
  if (desc.contains("matrices")) {
    const auto p = to_count(field(desc, "prime", path), path + ".prime");
    std::vector<IntMatrix> gens;
    const auto& list = desc["matrices"];
    if (!list.is_array()) fail(path + ".matrices", "expected an array of matrices");
    for (std::size_t i = 0; i < list.size(); ++i)
      gens.push_back(to_matrix(list[i], path + ".matrices[" + std::to_string(i) + "]"));
    return single(finite::close_matrices_mod_p(gens, p, cap));
  }
  if (desc.contains("table")) {
    const auto& t = desc["table"];
    if (!t.is_array()) fail(path + ".table", "expected an array of rows");
    std::vector<std::vector<finite::Element>> rows;
    for (std::size_t r = 0; r < t.size(); ++r) {
      if (!t[r].is_array()) fail(path + ".table[" + std::to_string(r) + "]", "expected an array");
      std::vector<finite::Element> row;
      for (std::size_t c = 0; c < t[r].size(); ++c)
        row.push_back(finite::Element(to_count(t[r][c], path + ".table[" + std::to_string(r) + "][" + std::to_string(c) + "]")));
      rows.push_back(std::move(row));
    }
    std::vector<finite::Element> gens;
    if (desc.contains("generators"))
      for (const auto& g : desc["generators"]) gens.push_back(finite::Element(to_count(g, path + ".generators")));
    return single(finite::FiniteGroup::from_table(rows, gens));
  }
  if (desc.contains("product")) {
    const auto& list = desc["product"];
    if (!list.is_array() || list.empty()) fail(path + ".product", "expected a non-empty array of groups");
    ParsedGroup out;
    finite::FiniteGroup acc;
    bool first = true;
    for (std::size_t i = 0; i < list.size(); ++i) {
      const auto part = parse_group(list[i], path + ".product[" + std::to_string(i) + "]", codomain);
      const std::size_t offset = first ? 0 : acc.factor_count();
      acc = first ? *part.group : finite::direct_product(acc, *part.group);
      first = false;
      out.components.emplace_back(offset, part.group->factor_count());
      out.component_groups.push_back(part.group);
    }
    out.group = std::make_shared<const finite::FiniteGroup>(std::move(acc));
    return out;
  }
  fail(path, "group needs one of 'builtin', 'permutations', 'matrices', 'table', 'product'");
}

finite::FiniteHom parse_finite_hom(const json& desc, const std::string& path, const ParsedGroup& domain,
                                   const ParsedGroup& codomain) {
  const auto& d = *domain.group;
  const auto& c = *codomain.group;
  if (!desc.is_object()) fail(path, "expected a homomorphism description object");
  if (desc.contains("trivial")) return finite::FiniteHom::trivial(domain.group, codomain.group);
  if (desc.contains("identity")) {
    if (!(d == c)) fail(path, "identity needs domain equal to codomain");
    std::vector<finite::Element> image(d.order());
    for (finite::Element x = 0; x < d.order(); ++x) image[x] = x;
    return finite::FiniteHom(domain.group, codomain.group, std::move(image));
  }
  if (desc.contains("projection")) {
    const std::size_t k = to_count(desc["projection"], path + ".projection");
    if (k < 1 || k > domain.components.size())
      fail(path + ".projection", "component " + std::to_string(k) + " outside 1.." + std::to_string(domain.components.size()));
    if (!(*domain.component_groups[k - 1] == c)) fail(path + ".projection", "component is not the codomain");
    const auto [offset, count] = domain.components[k - 1];
    std::vector<finite::Element> image(d.order());
    std::vector<finite::Element> parts(count);
    for (finite::Element x = 0; x < d.order(); ++x) {
      for (std::size_t f = 0; f < count; ++f) parts[f] = d.component(x, offset + f);
      image[x] = c.compose(parts);
    }
    return finite::FiniteHom(domain.group, codomain.group, std::move(image));
  }
  if (desc.contains("generator_images")) {
    const auto& list = desc["generator_images"];
    if (!list.is_array()) fail(path + ".generator_images", "expected an array of words");
    std::vector<finite::Element> images;
    const auto& cgens = c.generators();
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string wpath = path + ".generator_images[" + std::to_string(i) + "]";
      if (!list[i].is_array()) fail(wpath, "expected a word: array of signed 1-based generator numbers");
      finite::Element w = c.identity();
      for (const auto& letter : list[i]) {
        if (!letter.is_number_integer()) fail(wpath, "letters must be integers");
        const long g = letter.get<long>();
        const std::size_t idx = std::size_t(g < 0 ? -g : g);
        if (idx < 1 || idx > cgens.size())
          fail(wpath, "letter " + std::to_string(g) + " outside +-1.." + std::to_string(cgens.size()));
        const finite::Element e = cgens[idx - 1];
        w = c.multiply(w, g < 0 ? c.inverse(e) : e);
      }
      images.push_back(w);
    }
    return finite::FiniteHom::from_generator_images(domain.group, codomain.group, images);
  }
  if (desc.contains("images")) {
    std::vector<finite::Element> image;
    for (const auto& v : desc["images"]) image.push_back(finite::Element(to_count(v, path + ".images")));
    return finite::FiniteHom(domain.group, codomain.group, std::move(image));
  }
  fail(path, "homomorphism needs one of 'trivial', 'identity', 'projection', 'generator_images', 'images'");
}

FiniteProblem parse_finite(const json& doc) {
  const ParsedGroup codomain = parse_group(field(doc, "codomain", "$"), "$.codomain", nullptr);
  const ParsedGroup domain =
      doc.contains("domain") ? parse_group(doc["domain"], "$.domain", &codomain) : codomain;
  FiniteProblem p{domain.group, codomain.group, {}, {}};
  const auto& homs = field(doc, "homs", "$");
  if (!homs.is_array()) fail("$.homs", "expected an array");
  for (std::size_t i = 0; i < homs.size(); ++i) {
    const std::string path = "$.homs[" + std::to_string(i) + "]";
    try {
      p.homs.push_back(parse_finite_hom(homs[i], path, domain, codomain));
    } catch (const InputError& e) {
      const std::string msg = e.what();
      if (msg.rfind(path, 0) == 0) throw;
      fail(path, msg);
    }
    p.hom_names.push_back(homs[i].contains("name") ? homs[i]["name"].get<std::string>()
                                                   : "phi_" + std::to_string(i + 1));
  }
  if (p.homs.size() < 2) fail("$.homs", "need at least 2 homomorphisms");
  return p;
}

// ---------------------------------------------------------------------------
// pc groups

struct ParsedPc {
  nilpotent::PcGroup group;
  std::vector<std::string> listed;  // generator names in file order
};

std::vector<std::string> names_of(const json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array of generator names");
  std::vector<std::string> out;
  for (const auto& n : v) {
    if (!n.is_string()) fail(path, "generator names must be strings");
    out.push_back(n.get<std::string>());
  }
  return out;
}

std::size_t generator_ref(const json& v, const std::vector<std::string>& listed, const std::string& path) {
  if (v.is_string()) {
    for (std::size_t i = 0; i < listed.size(); ++i)
      if (listed[i] == v.get<std::string>()) return i;
    fail(path, "unknown generator '" + v.get<std::string>() + "'");
  }
  const std::size_t k = to_count(v, path);
  if (k < 1 || k > listed.size()) fail(path, "generator number outside 1.." + std::to_string(listed.size()));
  return k - 1;
}

// Exponents over `names` from either a name -> exponent map or a full vector.
IntVector exponents(const json& v, const std::vector<std::string>& names, const std::string& path) {
  IntVector out(names.size());
  if (v.is_array()) {
    out = to_vector(v, path);
    if (out.size() != names.size())
      fail(path, "has " + std::to_string(out.size()) + " entries, expected " + std::to_string(names.size()));
    return out;
  }
  if (!v.is_object()) fail(path, "expected an exponent vector or a name -> exponent object");
  for (auto it = v.begin(); it != v.end(); ++it) {
    std::size_t k = names.size();
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == it.key()) k = i;
    if (k == names.size()) fail(path, "unknown generator '" + it.key() + "'");
    out[k] = to_integer(it.value(), path + "." + it.key());
  }
  return out;
}

ParsedPc parse_pc_group(const json& desc, const std::string& path) {
  const auto listed = names_of(field(desc, "generators", path), path + ".generators");
  const auto central = desc.contains("central") ? names_of(desc["central"], path + ".central")
                                                 : std::vector<std::string>{};
  std::set<std::string> central_set(central.begin(), central.end());
  for (const auto& c : central)
    if (std::find(listed.begin(), listed.end(), c) == listed.end())
      fail(path + ".central", "'" + c + "' is not a listed generator");
  std::vector<std::string> noncentral, central_ordered;
  for (const auto& n : listed) (central_set.count(n) ? central_ordered : noncentral).push_back(n);

  const std::size_t m = noncentral.size();
  std::vector<std::vector<IntVector>> comm(m);
  for (std::size_t i = 0; i < m; ++i) comm[i].assign(i, IntVector{});
  std::set<std::pair<std::size_t, std::size_t>> given;
  if (desc.contains("commutators")) {
    const auto& list = desc["commutators"];
    if (!list.is_array()) fail(path + ".commutators", "expected an array of [g, h, value] triples");
    for (std::size_t r = 0; r < list.size(); ++r) {
      const std::string rpath = path + ".commutators[" + std::to_string(r) + "]";
      if (!list[r].is_array() || list[r].size() != 3) fail(rpath, "expected [g, h, value]");
      const std::string gi = listed[generator_ref(list[r][0], listed, rpath + "[0]")];
      const std::string gj = listed[generator_ref(list[r][1], listed, rpath + "[1]")];
      IntVector value = exponents(list[r][2], central_ordered, rpath + "[2]");
      const bool zero = std::all_of(value.begin(), value.end(), [](const Integer& x) { return sgn(x) == 0; });
      if (gi == gj) {
        if (!zero) fail(rpath, "[" + gi + "," + gi + "] must be trivial");
        continue;
      }
      if (central_set.count(gi) || central_set.count(gj)) {
        if (!zero) fail(rpath, "commutators with central generators must be trivial");
        continue;
      }
      std::size_t a = std::size_t(std::find(noncentral.begin(), noncentral.end(), gi) - noncentral.begin());
      std::size_t b = std::size_t(std::find(noncentral.begin(), noncentral.end(), gj) - noncentral.begin());
      // stored as [g_a, g_b] with a > b; [x, y] = -[y, x]
      if (a < b) {
        std::swap(a, b);
        for (auto& x : value) x = -x;
      }
      if (!given.insert({a, b}).second) fail(rpath, "[" + gi + "," + gj + "] given twice");
      comm[a][b] = std::move(value);
    }
  }
  try {
    return {nilpotent::PcGroup(noncentral, central_ordered, comm), listed};
  } catch (const InputError& e) {
    fail(path, e.what());
  }
}

nilpotent::PcHom parse_pc_hom(const json& desc, const std::string& path, const ParsedPc& domain,
                              const ParsedPc& codomain) {
  nilpotent::PcHom h{domain.group, codomain.group, {}};
  const auto& dn = domain.group.names();
  const auto& cn = codomain.group.names();
  h.images.assign(dn.size(), codomain.group.identity());
  if (desc.is_array()) {
    if (desc.size() != domain.listed.size())
      fail(path, "has " + std::to_string(desc.size()) + " images for " + std::to_string(domain.listed.size()) + " generators");
    for (std::size_t i = 0; i < desc.size(); ++i)
      h.images[domain.group.index_of(domain.listed[i])] = exponents(desc[i], cn, path + "[" + std::to_string(i) + "]");
    return h;
  }
  if (!desc.is_object()) fail(path, "expected generator -> image object or array of images");
  for (auto it = desc.begin(); it != desc.end(); ++it) {
    if (it.key() == "name") continue;
    if (std::find(dn.begin(), dn.end(), it.key()) == dn.end()) fail(path, "unknown domain generator '" + it.key() + "'");
    h.images[domain.group.index_of(it.key())] = exponents(it.value(), cn, path + "." + it.key());
  }
  return h;
}

NilpotentProblem parse_nilpotent(const json& doc) {
  const ParsedPc domain = parse_pc_group(field(doc, "domain", "$"), "$.domain");
  const ParsedPc codomain =
      doc.contains("codomain") ? parse_pc_group(doc["codomain"], "$.codomain") : domain;
  NilpotentProblem p;
  const auto& homs = field(doc, "homs", "$");
  if (!homs.is_array()) fail("$.homs", "expected an array");
  for (std::size_t i = 0; i < homs.size(); ++i) {
    const std::string path = "$.homs[" + std::to_string(i) + "]";
    p.homs.push_back(parse_pc_hom(homs[i], path, domain, codomain));
    const auto v = nilpotent::validate_hom(p.homs.back());
    if (!v.valid) {
      std::string msg = "not a homomorphism";
      for (const auto& d : v.diagnostics) msg += "; " + d;
      fail(path, msg);
    }
  }
  if (p.homs.size() < 2) fail("$.homs", "need at least 2 homomorphisms");
  return p;
}

std::vector<IntMatrix> parse_hom_list(const json& doc) {
  const auto& homs = field(doc, "homs", "$");
  if (!homs.is_array()) fail("$.homs", "expected an array of matrices");
  std::vector<IntMatrix> out;
  for (std::size_t i = 0; i < homs.size(); ++i) {
    const std::string path = "$.homs[" + std::to_string(i) + "]";
    out.push_back(to_matrix(homs[i], path));
    if (out.back().rows() != out.front().rows() || out.back().cols() != out.front().cols())
      fail(path, "is " + std::to_string(out.back().rows()) + "x" + std::to_string(out.back().cols()) +
                     ", $.homs[0] is " + std::to_string(out.front().rows()) + "x" + std::to_string(out.front().cols()));
  }
  if (out.size() < 2) fail("$.homs", "need at least 2 homomorphisms");
  return out;
}

}  // namespace

ProblemFile parse_problem(const json& doc) {
  if (!doc.is_object()) fail("$", "expected a JSON object with a 'kind' field");
  const auto& kind_field = field(doc, "kind", "$");
  if (!kind_field.is_string()) fail("$.kind", "expected a string");
  const std::string kind = kind_field.get<std::string>();
  if (kind == "snf") return {kind, SnfProblem{to_matrix(field(doc, "matrix", "$"), "$.matrix")}};
  if (kind == "abelian-pair") {
    AbelianPairProblem p{to_matrix(field(doc, "phi", "$"), "$.phi"), to_matrix(field(doc, "psi", "$"), "$.psi")};
    if (p.phi.rows() != p.psi.rows() || p.phi.cols() != p.psi.cols())
      fail("$.psi", "shape " + std::to_string(p.psi.rows()) + "x" + std::to_string(p.psi.cols()) +
                        " differs from $.phi " + std::to_string(p.phi.rows()) + "x" + std::to_string(p.phi.cols()));
    return {kind, std::move(p)};
  }
  if (kind == "abelian-multi") return {kind, AbelianMultiProblem{parse_hom_list(doc)}};
  if (kind == "finite") return {kind, parse_finite(doc)};
  if (kind == "nilpotent") return {kind, parse_nilpotent(doc)};
  fail("$.kind", "unknown kind '" + kind + "' (expected snf, abelian-pair, abelian-multi, finite, nilpotent)");
}

ProblemFile parse_problem_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) fail("$", "missing field 'kind' (empty document)");
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  return parse_problem(doc);
}

ProblemFile parse_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_problem_text(buf.str());
}

}  // namespace ckit::cli
