#include "surfsig/atlas.hpp"

#include "surfsig/shipped.hpp"
#include "surfsig/text.hpp"

#include <algorithm>
#include <sstream>

namespace surfsig {

std::string Constraint::describe() const {
  switch (kind) {
    case Kind::disjoint:
      return "disjoint(" + curves[0] + "," + curves[1] + ")";
    case Kind::intersect_once:
      return "intersect_once(" + curves[0] + "," + curves[1] + ")";
    case Kind::separating:
      return "separating(" + curves[0] + (type ? "," + std::to_string(*type) : "") + ")";
    case Kind::equal_product:
      return "relation " + label + ": " + print_word(lhs) + " == " + print_word(rhs);
  }
  return {};
}

bool CurveAtlas::contains(const std::string& curve) const {
  return std::any_of(curves.begin(), curves.end(), [&](const CurveClass& c) { return c.name == curve; });
}

std::vector<const Constraint*> CurveAtlas::relations() const {
  std::vector<const Constraint*> out;
  for (const auto& c : constraints)
    if (c.kind == Constraint::Kind::equal_product) out.push_back(&c);
  return out;
}

const CurveClass& curve_class(const CurveAtlas& atlas, const std::string& name) {
  for (const auto& c : atlas.curves)
    if (c.name == name) return c;
  throw UnknownCurve("'" + name + "' in atlas " + atlas.name);
}

int separating_type(int split, Eigen::Index genus) {
  const auto other = genus - split;
  if (split < 1 || other < 1)
    throw GenusTooSmall("a curve bounding genus " + std::to_string(split) + " does not separate a genus " +
                        std::to_string(genus) + " surface");
  return static_cast<int>(std::min<Eigen::Index>(split, other));
}

namespace {

int line_type(const CurveClass& c) { return c.split ? *c.split : c.sep_type; }

Constraint parse_relation(const text::Line& line, std::size_t after_keyword) {
  const std::string& s = line.text;
  const auto colon = s.find(':', after_keyword);
  if (colon == std::string::npos) throw ParseError(line.number, static_cast<int>(s.size()) + 1, {"':'"});
  const auto eq = s.find("==", colon);
  if (eq == std::string::npos) throw ParseError(line.number, static_cast<int>(s.size()) + 1, {"'=='"});
  Constraint c;
  c.kind = Constraint::Kind::equal_product;
  c.label = text::trim(s.substr(after_keyword, colon - after_keyword));
  if (c.label.empty()) throw ParseError(line.number, static_cast<int>(colon) + 1, {"relation label"});
  c.lhs = parse_word(s.substr(colon + 1, eq - colon - 1), line.number, static_cast<int>(colon + 1));
  c.rhs = parse_word(s.substr(eq + 2), line.number, static_cast<int>(eq + 2));
  return c;
}

}  // namespace

CurveAtlas parse_atlas(std::string_view source, std::string name) {
  CurveAtlas atlas;
  atlas.name = std::move(name);
  for (const auto& line : text::lines(source)) {
    const auto tok = text::split_ws(line.text);
    const std::string& key = tok[0];
    if (key == "genus" || key == "min_genus") {
      if (tok.size() != 2) throw ParseError(line.number, 1, {key + " <integer>"});
      const auto g = text::to_int(tok[1], line.number);
      if (g < 1) throw FormatError("line " + std::to_string(line.number) + ": genus must be positive");
      (key == "genus" ? atlas.genus : atlas.min_genus) = g;
    } else if (key == "curve") {
      if (tok.size() < 3) throw ParseError(line.number, 1, {"curve <name> <coordinates> [type=j] [split=j]"});
      CurveClass c;
      c.name = tok[1];
      c.homology = parse_vector(tok[2]);
      for (std::size_t i = 3; i < tok.size(); ++i) {
        const auto [k, v] = text::key_value(tok[i], line.number);
        if (k == "type")
          c.sep_type = static_cast<int>(text::to_int(v, line.number));
        else if (k == "split")
          c.split = static_cast<int>(text::to_int(v, line.number));
        else
          throw ParseError(line.number, 1, {"type=", "split="}, k);
      }
      if (atlas.contains(c.name)) throw FormatError("line " + std::to_string(line.number) + ": duplicate curve " + c.name);
      atlas.curves.push_back(std::move(c));
    } else if (key == "constraint") {
      if (tok.size() < 3) throw ParseError(line.number, 1, {"constraint <kind> ..."});
      Constraint c;
      const std::string& kind = tok[1];
      if (kind == "disjoint" || kind == "intersect_once") {
        if (tok.size() != 4) throw ParseError(line.number, 1, {"two curve names"});
        c.kind = kind == "disjoint" ? Constraint::Kind::disjoint : Constraint::Kind::intersect_once;
        c.curves = {tok[2], tok[3]};
      } else if (kind == "separating") {
        if (tok.size() > 4) throw ParseError(line.number, 1, {"separating <curve> [j]"});
        c.kind = Constraint::Kind::separating;
        c.curves = {tok[2]};
        if (tok.size() == 4) c.type = static_cast<int>(text::to_int(tok[3], line.number));
      } else if (kind == "equal_product") {
        c = parse_relation(line, line.text.find("equal_product") + 13);
      } else {
        throw ParseError(line.number, 12, {"disjoint", "intersect_once", "separating", "equal_product"}, kind);
      }
      atlas.constraints.push_back(std::move(c));
    } else if (key == "relation") {
      atlas.constraints.push_back(parse_relation(line, line.text.find("relation") + 8));
    } else {
      throw ParseError(line.number, 1, {"genus", "min_genus", "curve", "constraint", "relation"}, key);
    }
  }
  if (atlas.genus == 0) throw FormatError("atlas " + atlas.name + " declares no genus");
  if (atlas.min_genus == 0) atlas.min_genus = atlas.genus;
  for (const auto& c : atlas.curves)
    if (c.homology.size() != 2 * atlas.genus)
      throw DimensionMismatch("curve " + c.name + " has " + std::to_string(c.homology.size()) +
                              " coordinates in genus " + std::to_string(atlas.genus));
  return atlas;
}

CurveAtlas load_atlas(const std::string& name, Convention conv) {
  std::string source;
  std::string atlas_name = name;
  if (auto s = shipped_file("atlases/" + name + ".atlas")) {
    source = *s;
  } else {
    try {
      source = read_text(name);
    } catch (const Error&) {
      throw UnknownAtlas("'" + name + "'");
    }
    atlas_name = text::stem(name);
  }
  CurveAtlas atlas = parse_atlas(source, atlas_name);
  const auto report = check_constraints(atlas, conv);
  if (const auto* bad = report.first_failure())
    throw ConstraintViolation(atlas.name + ": " + bad->name + (bad->detail.empty() ? "" : " (" + bad->detail + ")"));
  return atlas;
}

CheckReport check_constraints(const CurveAtlas& atlas, Convention conv) {
  CheckReport report;
  const auto h = atlas.genus;
  for (const auto& c : atlas.curves) {
    const std::string name = "class(" + c.name + ")";
    if (c.homology.size() != 2 * h) {
      report.add(name, false, "wrong dimension");
    } else if (c.sep_type < 0 || c.sep_type > h / 2) {
      report.add(name, false, "type out of range");
    } else if (c.sep_type >= 1) {
      report.add(name, is_zero(c.homology), "separating curves are null-homologous");
    } else {
      report.add(name, content(c.homology) == 1, "nonseparating classes are primitive");
    }
  }
  for (const auto& k : atlas.constraints) {
    const std::string name = k.describe();
    try {
      switch (k.kind) {
        case Constraint::Kind::disjoint: {
          const Integer p = pairing(curve_class(atlas, k.curves[0]).homology, curve_class(atlas, k.curves[1]).homology);
          report.add(name, p == 0, "pairing " + p.str());
          break;
        }
        case Constraint::Kind::intersect_once: {
          const Integer p = pairing(curve_class(atlas, k.curves[0]).homology, curve_class(atlas, k.curves[1]).homology);
          report.add(name, abs(p) == 1, "pairing " + p.str());
          break;
        }
        case Constraint::Kind::separating: {
          const auto& c = curve_class(atlas, k.curves[0]);
          const bool typed = c.sep_type >= 1 && (!k.type || *k.type == c.sep_type);
          report.add(name, is_zero(c.homology) && typed, "type " + std::to_string(c.sep_type));
          break;
        }
        case Constraint::Kind::equal_product: {
          const bool eq = exactly_equal(evaluate(k.lhs, atlas, {}, conv), evaluate(k.rhs, atlas, {}, conv));
          report.add(name, eq, eq ? "" : "sides differ in Sp(" + std::to_string(2 * h) + ",Z)");
          break;
        }
      }
    } catch (const Error& e) {
      report.add(name, false, e.what());
    }
  }
  return report;
}

CurveAtlas stabilize(const CurveAtlas& atlas, Eigen::Index genus) {
  if (genus < atlas.min_genus)
    throw GenusTooSmall("atlas " + atlas.name + " needs genus at least " + std::to_string(atlas.min_genus) +
                        ", got " + std::to_string(genus));
  CurveAtlas out = atlas;
  out.genus = genus;
  for (auto& c : out.curves) {
    c.homology = pad_vector(c.homology, genus);
    if (c.sep_type >= 1) c.sep_type = separating_type(line_type(c), genus);
  }
  for (auto& k : out.constraints)
    if (k.kind == Constraint::Kind::separating && k.type) {
      const auto& orig = curve_class(atlas, k.curves[0]);
      const int split = *k.type == orig.sep_type ? line_type(orig) : *k.type;
      k.type = separating_type(split, genus);
    }
  return out;
}

}  // namespace surfsig
