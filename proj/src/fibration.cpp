#include "surfsig/fibration.hpp"

#include "surfsig/meyer.hpp"
#include "surfsig/shipped.hpp"
#include "surfsig/text.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace surfsig {

namespace {

/// Position of the first ',' outside brackets and parentheses.
std::size_t top_level_comma(const std::string& s) {
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '[' || c == '(') ++depth;
    if (c == ']' || c == ')') --depth;
    if (c == ',' && depth == 0) return i;
  }
  return std::string::npos;
}

std::string after_keyword(const std::string& line, const std::string& key, std::size_t& offset) {
  offset = line.find(key) + key.size();
  return line.substr(offset);
}

SingularSpec parse_singular(const text::Line& line) {
  std::size_t off = 0;
  std::string rest = after_keyword(line.text, "singular", off);
  SingularSpec spec;
  if (const auto img = rest.find("image="); img != std::string::npos) {
    const auto start = img + 6;
    spec.image = parse_word(rest.substr(start), line.number, static_cast<int>(off + start));
    rest.erase(img);
  }
  const auto tok = text::split_ws(rest);
  if (tok.empty()) throw ParseError(line.number, static_cast<int>(off) + 1, {"t(<curve>)"});
  const Word w = parse_word(tok[0], line.number, static_cast<int>(off));
  if (w.kind != Word::Kind::Twist || w.exponent != 1)
    throw ParseError(line.number, static_cast<int>(off) + 1, {"t(<curve>)"}, tok[0]);
  spec.curve = w.name;
  for (std::size_t i = 1; i < tok.size(); ++i) {
    const auto [k, v] = text::key_value(tok[i], line.number);
    if (k == "type")
      spec.declared_type = static_cast<int>(text::to_int(v, line.number));
    else if (k == "chirality")
      spec.chirality = parse_chirality(v);
    else
      throw ParseError(line.number, 1, {"type=", "chirality=", "image="}, k);
  }
  return spec;
}

struct HandleMatrices {
  std::vector<IntMatrix> alphas, betas;
};

HandleMatrices handle_matrices(const Fibration& f, Convention conv) {
  HandleMatrices m;
  for (const auto& h : f.handles) {
    m.alphas.push_back(evaluate(h.alpha, f.atlas, f.defs, conv));
    m.betas.push_back(evaluate(h.beta, f.atlas, f.defs, conv));
  }
  return m;
}

std::vector<IntMatrix> letter_matrices(const Factorization& fac, Convention conv) {
  std::vector<IntMatrix> out;
  for (const auto& l : fac.letters) out.push_back(letter_matrix(l, conv));
  return out;
}

int local_sum(const Factorization& fac) {
  int s = 0;
  for (const auto& l : fac.letters) s += local_signature(l);
  return s;
}

bool same_up_to_sign(const IntVector& a, const IntVector& b) {
  return exactly_equal(a, b) || exactly_equal(a, (-b).eval());
}

/// Ordered tuples of classes related by a symplectic change of basis, up to
/// the orientation of each curve: equal coincidence pattern and equal pairing
/// matrices after flipping some of the classes.
bool group_isomorphic(const std::vector<Letter>& u, const std::vector<Letter>& v, std::string& why) {
  const std::size_t k = u.size();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (same_up_to_sign(u[i].homology, u[j].homology) != same_up_to_sign(v[i].homology, v[j].homology)) {
        why = "coincidence pattern differs at positions " + std::to_string(i + 1) + "," + std::to_string(j + 1);
        return false;
      }
  std::vector<int> eps(k, 0);
  for (std::size_t root = 0; root < k; ++root) {
    if (eps[root] != 0) continue;
    eps[root] = 1;
    std::deque<std::size_t> queue{root};
    while (!queue.empty()) {
      const auto i = queue.front();
      queue.pop_front();
      for (std::size_t j = 0; j < k; ++j) {
        if (j == i) continue;
        const Integer p = pairing(u[i].homology, u[j].homology);
        const Integer q = pairing(v[i].homology, v[j].homology);
        if (abs(p) != abs(q)) {
          why = "pairing of positions " + std::to_string(i + 1) + "," + std::to_string(j + 1) + " differs";
          return false;
        }
        if (p == 0) continue;
        const int rel = p == q ? 1 : -1;
        if (eps[j] == 0) {
          eps[j] = eps[i] * rel;
          queue.push_back(j);
        } else if (eps[j] != eps[i] * rel) {
          why = "pairing signs cannot be matched";
          return false;
        }
      }
    }
  }
  return true;
}

std::string format_groups(const std::vector<FiberGroup>& groups) {
  std::string s;
  for (const auto& g : groups) {
    if (!s.empty()) s += ';';
    for (std::size_t i = 0; i < g.first.size(); ++i) s += (i ? "," : "") + std::to_string(g.first[i] + 1);
    s += ':';
    for (std::size_t i = 0; i < g.second.size(); ++i) s += (i ? "," : "") + std::to_string(g.second[i] + 1);
  }
  return s;
}

}  // namespace

Fibration parse_fibration(std::string_view source, std::string id, std::optional<Eigen::Index> genus, Convention conv) {
  Fibration f;
  f.id = std::move(id);
  std::string atlas_name;
  bool have_base = false;
  for (const auto& line : text::lines(source)) {
    const auto tok = text::split_ws(line.text);
    const std::string& key = tok[0];
    std::size_t off = 0;
    if (key == "fiber_genus" || key == "base_genus") {
      if (tok.size() != 2) throw ParseError(line.number, 1, {key + " <integer>"});
      const long v = text::to_int(tok[1], line.number);
      if (v < 0) throw FormatError("line " + std::to_string(line.number) + ": negative genus");
      if (key == "fiber_genus") {
        f.fiber_genus = v;
      } else {
        f.base_genus = v;
        have_base = true;
      }
    } else if (key == "atlas") {
      if (tok.size() != 2) throw ParseError(line.number, 1, {"atlas <name>"});
      atlas_name = tok[1];
    } else if (key == "achiral") {
      f.achiral = true;
    } else if (key == "def") {
      const std::string rest = after_keyword(line.text, "def", off);
      const auto eq = rest.find('=');
      if (eq == std::string::npos) throw ParseError(line.number, static_cast<int>(line.text.size()) + 1, {"'='"});
      const std::string name = text::trim(rest.substr(0, eq));
      if (name.empty()) throw ParseError(line.number, static_cast<int>(off) + 1, {"name"});
      if (f.defs.count(name)) throw FormatError("line " + std::to_string(line.number) + ": duplicate definition " + name);
      f.defs.emplace(name, parse_word(rest.substr(eq + 1), line.number, static_cast<int>(off + eq + 1)));
    } else if (key == "handle") {
      const std::string rest = after_keyword(line.text, "handle", off);
      const auto comma = top_level_comma(rest);
      if (comma == std::string::npos) throw ParseError(line.number, static_cast<int>(line.text.size()) + 1, {"','"});
      f.handles.push_back({parse_word(rest.substr(0, comma), line.number, static_cast<int>(off)),
                           parse_word(rest.substr(comma + 1), line.number, static_cast<int>(off + comma + 1))});
    } else if (key == "singular") {
      f.singular.push_back(parse_singular(line));
    } else if (key == "section") {
      if (tok.size() < 2) throw ParseError(line.number, 1, {"section <self-intersection> [note]"});
      const std::string rest = after_keyword(line.text, "section", off);
      const auto note_start = rest.find(tok[1]) + tok[1].size();
      f.section = SectionData::declared(text::to_int(tok[1], line.number), text::trim(rest.substr(note_start)));
    } else {
      throw ParseError(line.number, 1,
                       {"fiber_genus", "base_genus", "atlas", "achiral", "def", "handle", "singular", "section"}, key);
    }
  }
  if (f.fiber_genus < 1) throw FormatError(f.id + ": fiber_genus missing");
  if (!have_base) f.base_genus = static_cast<long>(f.handles.size());
  const Eigen::Index declared_genus = f.fiber_genus;
  if (genus) f.fiber_genus = *genus;
  if (atlas_name.empty()) {
    f.atlas.name = "none";
    f.atlas.genus = f.atlas.min_genus = f.fiber_genus;
    return f;
  }
  const CurveAtlas base = load_atlas(atlas_name, conv);
  f.atlas = stabilize(base, f.fiber_genus);
  if (f.fiber_genus != declared_genus) {
    // Declared types refer to the genus in the file; carry the ones that
    // agree with the atlas over to the new genus and leave the rest to fail.
    const CurveAtlas at_declared = stabilize(base, declared_genus);
    for (auto& s : f.singular)
      if (s.declared_type && at_declared.contains(s.curve) && f.atlas.contains(s.curve) &&
          curve_class(at_declared, s.curve).sep_type == *s.declared_type)
        s.declared_type = curve_class(f.atlas, s.curve).sep_type;
  }
  return f;
}

Fibration load_fibration(const std::string& path, std::optional<Eigen::Index> genus, Convention conv) {
  return parse_fibration(read_text(path), text::stem(path), genus, conv);
}

Fibration trivial_fibration(Eigen::Index fiber_genus, long base_genus) {
  Fibration f;
  f.id = "trivial";
  f.fiber_genus = fiber_genus;
  f.base_genus = base_genus;
  f.atlas.name = "none";
  f.atlas.genus = f.atlas.min_genus = fiber_genus;
  for (long i = 0; i < base_genus; ++i) f.handles.push_back({Word{}, Word{}});
  f.section = SectionData::declared(0, "constant section of the product");
  return f;
}

Factorization factorization(const Fibration& f, Convention conv) {
  Factorization fac;
  fac.genus = f.fiber_genus;
  fac.atlas = f.atlas.name;
  for (const auto& s : f.singular) {
    const auto& c = curve_class(f.atlas, s.curve);
    Letter l;
    l.label = s.curve;
    l.homology = c.homology;
    if (s.image) l.homology = evaluate(*s.image, f.atlas, f.defs, conv) * c.homology;
    l.sep_type = c.sep_type;
    l.chirality = s.chirality;
    fac.letters.push_back(std::move(l));
  }
  return fac;
}

CheckReport validate(const Fibration& f, Convention conv) {
  CheckReport r;
  const auto atlas_report = check_constraints(f.atlas, conv);
  const auto* bad = atlas_report.first_failure();
  r.add("atlas " + f.atlas.name, bad == nullptr, bad ? bad->name + ": " + bad->detail : "");
  r.add("handle count", static_cast<long>(f.handles.size()) == f.base_genus,
        std::to_string(f.handles.size()) + " handles for base genus " + std::to_string(f.base_genus));

  bool types_ok = true, chirality_ok = true;
  std::string type_detail;
  for (std::size_t i = 0; i < f.singular.size(); ++i) {
    const auto& s = f.singular[i];
    if (!f.atlas.contains(s.curve)) {
      types_ok = false;
      type_detail = "unknown curve " + s.curve;
      continue;
    }
    const int t = curve_class(f.atlas, s.curve).sep_type;
    if (s.declared_type && *s.declared_type != t) {
      types_ok = false;
      type_detail = "fiber " + std::to_string(i + 1) + " declared type " + std::to_string(*s.declared_type) +
                    ", atlas type " + std::to_string(t);
    }
    if (s.chirality == Chirality::left && !f.achiral) chirality_ok = false;
  }
  r.add("fiber types", types_ok, type_detail);
  r.add("chirality", chirality_ok, chirality_ok ? "" : "left-handed fibers need the achiral flag");
  r.add("section", !f.section.exists || f.section.self_intersection.has_value());

  try {
    const auto hm = handle_matrices(f, conv);
    IntMatrix p = IntMatrix::Identity(2 * f.fiber_genus, 2 * f.fiber_genus);
    for (std::size_t i = 0; i < hm.alphas.size(); ++i) p = (p * commutator(hm.alphas[i], hm.betas[i])).eval();
    p = (p * evaluate(factorization(f, conv), conv)).eval();
    const bool ok = exactly_equal(p, IntMatrix::Identity(p.rows(), p.cols()));
    r.add("relator", ok, ok ? "" : "product of commutators and twists is not I in Sp(" +
                                       std::to_string(2 * f.fiber_genus) + ",Z)");
  } catch (const Error& e) {
    r.add("relator", false, e.what());
  }
  return r;
}

std::vector<long> mu_comb(std::span<const Letter> letters, Eigen::Index fiber_genus) {
  std::vector<long> mu(static_cast<std::size_t>(fiber_genus / 2 + 1), 0);
  for (const auto& l : letters) {
    if (l.sep_type < 0 || l.sep_type > fiber_genus / 2) throw Error("fiber type out of range");
    ++mu[static_cast<std::size_t>(l.sep_type)];
  }
  return mu;
}

std::vector<long> mu_comb(const Fibration& f) {
  std::vector<long> mu(static_cast<std::size_t>(f.fiber_genus / 2 + 1), 0);
  for (const auto& s : f.singular) ++mu.at(static_cast<std::size_t>(curve_class(f.atlas, s.curve).sep_type));
  return mu;
}

int meyer_signature(std::span<const IntMatrix> alphas, std::span<const IntMatrix> betas,
                    std::span<const IntMatrix> gammas) {
  if (alphas.size() != betas.size()) throw DimensionMismatch("unequal numbers of alpha and beta monodromies");
  if (alphas.empty() && gammas.empty()) return 0;
  const Eigen::Index n = alphas.empty() ? gammas.front().rows() : alphas.front().rows();
  const IntMatrix id = IntMatrix::Identity(n, n);

  std::vector<IntMatrix> kappa;
  for (std::size_t i = 0; i < alphas.size(); ++i) kappa.push_back(commutator(alphas[i], betas[i]));
  IntMatrix relator = product<Integer>(kappa, n) * product<Integer>(gammas, n);
  if (!exactly_equal(relator, id)) throw RelatorViolation("prod [alpha_i, beta_i] prod gamma_j is not the identity");

  int s = 0;
  for (std::size_t i = 0; i < kappa.size(); ++i) s += tau(kappa[i], betas[i]);
  IntMatrix partial = id;
  for (std::size_t i = 0; i < kappa.size(); ++i) {
    if (i > 0) s -= tau(partial, kappa[i]);
    partial = (partial * kappa[i]).eval();
  }
  for (std::size_t j = 0; j + 1 < gammas.size(); ++j) {
    s -= tau(partial, gammas[j]);
    partial = (partial * gammas[j]).eval();
  }
  return s;
}

int signature_boundary(const Fibration& f, std::span<const IntMatrix> gammas, Convention conv) {
  const auto hm = handle_matrices(f, conv);
  return meyer_signature(hm.alphas, hm.betas, gammas);
}

int local_signature(const Letter& l) {
  if (l.sep_type == 0) return 0;
  return l.chirality == Chirality::right ? -1 : 1;
}

int signature(const Fibration& f, Convention conv) {
  const auto fac = factorization(f, conv);
  const auto gammas = letter_matrices(fac, conv);
  return signature_boundary(f, gammas, conv) + local_sum(fac);
}

int signature_split(const Fibration& f, Convention conv) {
  const auto fac = factorization(f, conv);
  const auto gammas = letter_matrices(fac, conv);
  const Eigen::Index n = 2 * f.fiber_genus;
  const IntMatrix loop = product<Integer>(gammas, n);
  const int outer = signature_boundary(f, std::span<const IntMatrix>(&loop, 1), conv);
  int disk = 0;
  IntMatrix partial = IntMatrix::Identity(n, n);
  for (const auto& g : gammas) {
    disk -= tau(partial, g);
    partial = (partial * g).eval();
  }
  return outer + disk + local_sum(fac);
}

long euler_characteristic(Eigen::Index fiber_genus, long base_genus, long singular_fibers) {
  return (2 - 2 * static_cast<long>(fiber_genus)) * (2 - 2 * base_genus) + singular_fibers;
}

long euler_characteristic(const Fibration& f) {
  return euler_characteristic(f.fiber_genus, f.base_genus, static_cast<long>(f.singular.size()));
}

FibrationRecord summarize(const Fibration& f, Convention conv) {
  FibrationRecord r;
  r.id = f.id;
  r.fiber_genus = f.fiber_genus;
  r.base_euler = 2 - 2 * f.base_genus;
  r.signature = signature(f, conv);
  r.fibers = factorization(f, conv).letters;
  r.section = f.section;
  r.provenance.push_back("fibration " + f.id + " (h=" + std::to_string(f.fiber_genus) +
                         ", g=" + std::to_string(f.base_genus) + ", sigma=" + std::to_string(r.signature) + ")");
  return r;
}

FibrationRecord trivial_bundle(Eigen::Index fiber_genus, long base_genus) {
  FibrationRecord r;
  r.id = "trivial(" + std::to_string(fiber_genus) + "," + std::to_string(base_genus) + ")";
  r.fiber_genus = fiber_genus;
  r.base_euler = 2 - 2 * base_genus;
  r.section = SectionData::declared(0, "constant section of the product");
  r.provenance.push_back("product " + r.id);
  return r;
}

FibrationRecord subtract(const FibrationRecord& f1, const FibrationRecord& f2, const std::vector<FiberGroup>& groups,
                         SubtractOptions options) {
  if (f1.fiber_genus != f2.fiber_genus)
    throw IncompatibleGrouping("fiber genera " + std::to_string(f1.fiber_genus) + " and " +
                               std::to_string(f2.fiber_genus) + " differ");
  if (groups.empty()) throw IncompatibleGrouping("no groups given");
  std::set<std::size_t> used1, used2;
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    const auto& g = groups[gi];
    const std::string where = "group " + std::to_string(gi + 1);
    if (g.first.empty() || g.first.size() != g.second.size())
      throw IncompatibleGrouping(where + " has " + std::to_string(g.first.size()) + " and " +
                                 std::to_string(g.second.size()) + " fibers");
    std::vector<Letter> u, v;
    for (auto i : g.first) {
      if (i >= f1.fibers.size()) throw IndexOutOfRange(where + ": fiber " + std::to_string(i + 1) + " of " + f1.id);
      if (!used1.insert(i).second) throw IncompatibleGrouping(where + ": fiber " + std::to_string(i + 1) + " of " + f1.id + " reused");
      u.push_back(f1.fibers[i]);
    }
    for (auto i : g.second) {
      if (i >= f2.fibers.size()) throw IndexOutOfRange(where + ": fiber " + std::to_string(i + 1) + " of " + f2.id);
      if (!used2.insert(i).second) throw IncompatibleGrouping(where + ": fiber " + std::to_string(i + 1) + " of " + f2.id + " reused");
      v.push_back(f2.fibers[i]);
    }
    for (std::size_t k = 0; k < u.size(); ++k) {
      if (u[k].sep_type != v[k].sep_type)
        throw IncompatibleGrouping(where + ": position " + std::to_string(k + 1) + " has types " +
                                   std::to_string(u[k].sep_type) + " and " + std::to_string(v[k].sep_type));
      if (u[k].chirality != v[k].chirality)
        throw IncompatibleGrouping(where + ": position " + std::to_string(k + 1) + " has different chirality");
    }
    std::string why;
    if (u.size() > 1 && !options.assert_isomorphic && !group_isomorphic(u, v, why))
      throw IncompatibleGrouping(where + ": " + why + " (override with --assert-isomorphic)");
  }
  if (used2.size() != f2.fibers.size())
    throw IncompatibleGrouping("every singular fiber of " + f2.id + " must be matched");

  FibrationRecord r;
  r.id = f1.id + "-" + f2.id;
  r.fiber_genus = f1.fiber_genus;
  r.base_euler = f1.base_euler + f2.base_euler - 2 * static_cast<long>(groups.size());
  r.signature = f1.signature - f2.signature;
  for (std::size_t i = 0; i < f1.fibers.size(); ++i)
    if (!used1.count(i)) r.fibers.push_back(f1.fibers[i]);
  if (f1.section.exists && f2.section.exists && options.coinciding_lifts)
    r.section = SectionData::declared(*f1.section.self_intersection - *f2.section.self_intersection,
                                      "difference of matched sections with coinciding lifts");
  r.provenance = f1.provenance;
  r.provenance.insert(r.provenance.end(), f2.provenance.begin(), f2.provenance.end());
  r.provenance.push_back("subtract " + f1.id + " - " + f2.id + " groups " + format_groups(groups) +
                         (options.assert_isomorphic ? " [asserted isomorphic]" : "") +
                         (options.coinciding_lifts ? " [coinciding lifts]" : ""));
  return r;
}

FibrationRecord subtract_full(const FibrationRecord& f1, const FibrationRecord& f2, SubtractOptions options) {
  if (f1.fiber_genus != f2.fiber_genus) throw CombinatorialMismatch("fiber genera differ");
  if (mu_comb(f1.fibers, f1.fiber_genus) != mu_comb(f2.fibers, f2.fiber_genus))
    throw CombinatorialMismatch(f1.id + " and " + f2.id + " have different mu_comb");
  std::vector<FiberGroup> groups;
  std::vector<bool> taken(f2.fibers.size(), false);
  for (std::size_t i = 0; i < f1.fibers.size(); ++i)
    for (std::size_t j = 0; j < f2.fibers.size(); ++j)
      if (!taken[j] && f2.fibers[j].sep_type == f1.fibers[i].sep_type &&
          f2.fibers[j].chirality == f1.fibers[i].chirality) {
        taken[j] = true;
        groups.push_back({{i}, {j}});
        break;
      }
  if (groups.size() != f1.fibers.size()) throw CombinatorialMismatch("fibers differ in chirality");
  return subtract(f1, f2, groups, options);
}

std::vector<FiberGroup> parse_groups(std::string_view spec) {
  std::vector<FiberGroup> groups;
  auto indices = [](const std::string& s) {
    std::vector<std::size_t> out;
    for (const auto& t : text::split(s, ',')) {
      const long k = text::to_int(t, 1);
      if (k < 1) throw FormatError("fiber indices start at 1");
      out.push_back(static_cast<std::size_t>(k - 1));
    }
    return out;
  };
  for (const auto& g : text::split(spec, ';')) {
    const auto colon = g.find(':');
    if (colon == std::string::npos) throw FormatError("group '" + g + "' needs the form i,j:k,l");
    groups.push_back({indices(g.substr(0, colon)), indices(g.substr(colon + 1))});
  }
  return groups;
}

FibrationRecord fiber_sum(const FibrationRecord& b1, const FibrationRecord& b2, std::optional<SectionData> result_section) {
  if (!b1.is_bundle() || !b2.is_bundle()) throw Error("fiber sums are defined here for surface bundles only");
  if (b1.base_euler != b2.base_euler)
    throw BaseMismatch("base genera " + std::to_string(b1.base_genus()) + " and " + std::to_string(b2.base_genus()));
  for (const auto* b : {&b1, &b2})
    if (!b->section.exists || b->section.self_intersection.value_or(1) != 0)
      throw MissingZeroSection(b->id + " has no declared section of self-intersection 0");
  FibrationRecord r;
  r.id = b1.id + "+" + b2.id;
  r.fiber_genus = b1.fiber_genus + b2.fiber_genus;
  r.base_euler = b1.base_euler;
  r.signature = b1.signature + b2.signature;
  if (result_section) r.section = *result_section;
  r.provenance = b1.provenance;
  r.provenance.insert(r.provenance.end(), b2.provenance.begin(), b2.provenance.end());
  r.provenance.push_back("fiber sum " + b1.id + " + " + b2.id);
  return r;
}

}  // namespace surfsig
