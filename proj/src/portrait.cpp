#include "unicrit/portrait.hpp"

#include <algorithm>
#include <array>
#include <sstream>
#include <unordered_map>

namespace unicrit {

namespace {

enum class Content { Any, Zero, Unity, Other };

struct Template {
  TableLabel label;
  std::vector<Content> content;
  std::vector<std::size_t> image;
};

constexpr Content Z = Content::Zero;
constexpr Content U = Content::Unity;

// Vertex lists follow the shapes drawn in the table, omega_i always a root
// of unity and 0 the designated zero vertex.
const std::vector<Template>& templates() {
  static const std::vector<Template> t = {
      // bullet, self-loop
      {TableLabel::L1a, {Content::Any}, {0}},
      // w1, w2, w3 : w3 -> w2 -> w1 -> w1
      {TableLabel::L1b, {U, U, U}, {0, 0, 1}},
      // w1, w3, 0 : 0 -> w3 -> w1 -> w1
      {TableLabel::L1c, {U, U, Z}, {0, 0, 1}},
      // w1, w2, w3, 0, w4
      {TableLabel::L1d, {U, U, U, Z, U}, {0, 0, 0, 2, 1}},
      // as above plus w5 -> 0
      {TableLabel::L1e, {U, U, U, Z, U, U}, {0, 0, 0, 2, 1, 3}},
      {TableLabel::L11, {U, U}, {0, 1}},
      {TableLabel::L2a, {U, U}, {1, 0}},
      // 0 <-> w3
      {TableLabel::L2b, {Z, U}, {1, 0}},
      // 0, w3, w1, w2, w4, w5
      {TableLabel::L2c, {Z, U, U, U, U, U}, {1, 0, 0, 0, 2, 3}},
      {TableLabel::L211, {Z, U, U, U}, {1, 0, 2, 3}},
      {TableLabel::L22, {Z, U, U, U}, {1, 0, 3, 2}},
      // 0 -> w3 -> w1 -> 0
      {TableLabel::L3, {Z, U, U}, {1, 2, 0}},
  };
  return t;
}

Content content_of(const FieldElement& x) {
  if (x.is_zero()) return Content::Zero;
  if (root_of_unity_order(x) > 0) return Content::Unity;
  return Content::Other;
}

Content content_of(const SkeletonVertex& v) {
  if (v.kind == SkeletonVertex::Kind::Concrete) return content_of(*v.value);
  if (v.members.size() == 1 && v.members[0].is_zero()) return Content::Zero;
  bool unity = !v.members.empty();
  for (const auto& m : v.members) unity = unity && content_of(m) == Content::Unity;
  return unity ? Content::Unity : Content::Other;
}

bool fits(Content want, Content have) { return want == Content::Any || want == have; }

// Backtracking search for a bijection sigma with image and content preserved.
bool extend(const Template& t, const std::vector<std::size_t>& image, const std::vector<Content>& content,
            std::vector<long>& sigma, std::vector<bool>& used, std::size_t i) {
  const std::size_t n = t.image.size();
  if (i == n) {
    for (std::size_t v = 0; v < n; ++v)
      if (image[static_cast<std::size_t>(sigma[v])] != static_cast<std::size_t>(sigma[t.image[v]])) return false;
    return true;
  }
  for (std::size_t s = 0; s < n; ++s) {
    if (used[s] || !fits(t.content[i], content[s])) continue;
    sigma[i] = static_cast<long>(s);
    used[s] = true;
    bool ok = true;
    // Prune on edges whose endpoints are both assigned.
    for (std::size_t v = 0; v <= i && ok; ++v) {
      std::size_t w = t.image[v];
      if (w <= i && image[static_cast<std::size_t>(sigma[v])] != static_cast<std::size_t>(sigma[w])) ok = false;
    }
    if (ok && extend(t, image, content, sigma, used, i + 1)) return true;
    used[s] = false;
  }
  sigma[i] = -1;
  return false;
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out;
}

}  // namespace

std::string label_name(TableLabel label) {
  switch (label) {
    case TableLabel::Empty: return "Empty";
    case TableLabel::L1a: return "(1)a";
    case TableLabel::L1b: return "(1)b";
    case TableLabel::L1c: return "(1)c";
    case TableLabel::L1d: return "(1)d";
    case TableLabel::L1e: return "(1)e";
    case TableLabel::L11: return "(1,1)";
    case TableLabel::L2a: return "(2)a";
    case TableLabel::L2b: return "(2)b";
    case TableLabel::L2c: return "(2)c";
    case TableLabel::L211: return "(2,1,1)";
    case TableLabel::L22: return "(2,2)";
    case TableLabel::L3: return "(3)";
    case TableLabel::NotInTable: return "NotInTable";
  }
  return "NotInTable";
}

Portrait build_portrait(const UnicriticalMap& f, const Budget& budget) {
  Portrait p;
  p.vertices = preperiodic_points(f, budget);
  std::unordered_map<FieldElement, std::size_t, FieldElementHash> index;
  for (std::size_t i = 0; i < p.vertices.size(); ++i) index.emplace(p.vertices[i], i);
  for (const auto& v : p.vertices) {
    auto it = index.find(f(v));
    if (it == index.end()) fail(ErrorCode::Internal, "portrait is not closed under f");
    p.image.push_back(it->second);
  }
  return p;
}

Skeleton skeletonize(const Portrait& p, const UnicriticalMap&, const Budget&) {
  const std::size_t n = p.vertices.size();
  // Every preimage of a preperiodic point is preperiodic, so the K-rational
  // preimages of a vertex are exactly the vertices mapping to it.
  std::vector<std::vector<std::size_t>> pre(n);
  for (std::size_t i = 0; i < n; ++i) pre[p.image[i]].push_back(i);

  std::vector<bool> kept(n);
  for (std::size_t i = 0; i < n; ++i) kept[i] = !pre[i].empty();

  Skeleton s;
  std::vector<std::size_t> new_index(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!kept[i]) continue;
    new_index[i] = s.vertices.size();
    SkeletonVertex v;
    v.kind = SkeletonVertex::Kind::Concrete;
    v.value = p.vertices[i];
    s.vertices.push_back(std::move(v));
  }
  for (std::size_t i = 0; i < n; ++i)
    if (kept[i]) s.image.push_back(new_index[p.image[i]]);

  for (std::size_t i = 0; i < n; ++i) {
    if (!kept[i]) continue;
    bool any_kept = std::any_of(pre[i].begin(), pre[i].end(), [&](std::size_t j) { return kept[j]; });
    if (any_kept) continue;
    SkeletonVertex v;
    v.kind = SkeletonVertex::Kind::PreimageClass;
    v.parent = new_index[i];
    for (std::size_t j : pre[i]) v.members.push_back(p.vertices[j]);
    sort_canonical(v.members);
    s.vertices.push_back(std::move(v));
    s.image.push_back(new_index[i]);
  }
  return s;
}

Classification classify_skeleton(const Skeleton& s, const NumberField&, bool c_is_zero) {
  Classification out;
  if (c_is_zero) {
    out.label = TableLabel::NotInTable;
    out.reason = "c=0";
    return out;
  }
  if (s.vertices.empty()) {
    out.label = TableLabel::Empty;
    return out;
  }
  std::vector<Content> content;
  for (const auto& v : s.vertices) content.push_back(content_of(v));
  for (const auto& t : templates()) {
    if (t.image.size() != s.vertices.size()) continue;
    std::vector<long> sigma(t.image.size(), -1);
    std::vector<bool> used(t.image.size(), false);
    if (extend(t, s.image, content, sigma, used, 0)) {
      out.label = t.label;
      return out;
    }
  }
  out.label = TableLabel::NotInTable;
  out.reason = "no template matches shape and vertex content";
  out.small_d_observation = true;
  return out;
}

Theorem1Report check_theorem1(const UnicriticalMap& f, const PlaceSet& S, const Budget& budget) {
  if (!is_s_integer(f.c(), S)) fail(ErrorCode::PreconditionFailed, "c is not an S-integer");
  Theorem1Report r;
  r.preperiodic = preperiodic_points(f, budget);
  for (const auto& cyc : cycles_of(f, r.preperiodic)) r.max_cycle_length = std::max(r.max_cycle_length, cyc.size());
  r.period_at_most_3 = r.max_cycle_length <= 3;
  r.height_vs_log3 = compare_height(f.c(), HeightBound::log_of(3));

  if (r.height_vs_log3 > 0 && !r.preperiodic.empty()) {
    r.power_form.applicable = true;
    r.power_form.holds = false;
    const auto mu = roots_of_unity(f.field(), f.d());
    for (const auto& y : fixed_points(f, budget)) {
      std::vector<FieldElement> orbit;
      for (const auto& z : mu) orbit.push_back(z * y);
      sort_canonical(orbit);
      orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
      if (orbit == r.preperiodic) {
        r.power_form.holds = true;
        r.y = y;
        break;
      }
    }
  }
  if (r.height_vs_log3 <= 0) {
    r.roots_of_unity_only.applicable = true;
    r.roots_of_unity_only.holds = std::all_of(r.preperiodic.begin(), r.preperiodic.end(), [](const FieldElement& x) {
      return x.is_zero() || root_of_unity_order(x) > 0;
    });
  }
  return r;
}

std::string portrait_dot(const Portrait& p, const std::string& gen) {
  std::ostringstream os;
  os << "digraph portrait {\n";
  for (std::size_t i = 0; i < p.vertices.size(); ++i)
    os << "  v" << i << " [label=\"" << dot_escape(p.vertices[i].to_string(gen)) << "\"];\n";
  for (std::size_t i = 0; i < p.vertices.size(); ++i) os << "  v" << i << " -> v" << p.image[i] << ";\n";
  os << "}\n";
  return os.str();
}

std::string skeleton_dot(const Skeleton& s, const std::string& gen) {
  std::ostringstream os;
  os << "digraph skeleton {\n";
  for (std::size_t i = 0; i < s.vertices.size(); ++i) {
    const auto& v = s.vertices[i];
    std::string label = v.kind == SkeletonVertex::Kind::Concrete
                            ? v.value->to_string(gen)
                            : "pre(" + s.vertices[v.parent].value->to_string(gen) + ")";
    os << "  v" << i << " [label=\"" << dot_escape(label) << "\"";
    if (v.kind == SkeletonVertex::Kind::PreimageClass) os << ", shape=box";
    os << "];\n";
  }
  for (std::size_t i = 0; i < s.vertices.size(); ++i) os << "  v" << i << " -> v" << s.image[i] << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace unicrit
