#include "run_config.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

namespace softfoot::cli {

namespace {

using nlohmann::json;

std::vector<double> linspace(double lo, double hi, int count) {
  require(count >= 1, "grid count must be >= 1");
  std::vector<double> v(static_cast<std::size_t>(count));
  if (count == 1) {
    v[0] = lo;
    return v;
  }
  for (int i = 0; i < count; ++i) v[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (count - 1);
  return v;
}

/// Wraps one JSON object: typed reads with defaults, provenance notes for
/// applied defaults, unknown-key rejection, mm->m conversion for lengths.
class Section {
 public:
  Section(const json* obj, std::string path, double length_scale,
          std::vector<std::string>* provenance)
      : obj_(obj), path_(std::move(path)), scale_(length_scale), provenance_(provenance) {}

  bool has(const std::string& key) {
    known_.insert(key);
    return obj_ && obj_->contains(key);
  }

  double number(const std::string& key, double fallback, bool is_length,
                const std::string& origin) {
    if (!has(key)) {
      note(key, fallback, origin);
      return fallback;
    }
    const json& v = (*obj_)[key];
    if (!v.is_number()) throw invalid_input("config key '" + full(key) + "' must be a number");
    return v.get<double>() * (is_length ? scale_ : 1.0);
  }

  int integer(const std::string& key, int fallback, const std::string& origin) {
    if (!has(key)) {
      note(key, fallback, origin);
      return fallback;
    }
    const json& v = (*obj_)[key];
    if (!v.is_number_integer()) {
      throw invalid_input("config key '" + full(key) + "' must be an integer");
    }
    return v.get<int>();
  }

  std::string text(const std::string& key, const std::string& fallback,
                   const std::string& origin) {
    if (!has(key)) {
      if (provenance_) provenance_->push_back(full(key) + " = \"" + fallback + "\" (" + origin + ")");
      return fallback;
    }
    const json& v = (*obj_)[key];
    if (!v.is_string()) throw invalid_input("config key '" + full(key) + "' must be a string");
    return v.get<std::string>();
  }

  std::vector<double> numbers(const std::string& key, bool is_length) {
    known_.insert(key);
    std::vector<double> out;
    if (!obj_ || !obj_->contains(key)) return out;
    const json& v = (*obj_)[key];
    if (!v.is_array()) throw invalid_input("config key '" + full(key) + "' must be an array");
    for (const auto& e : v) {
      if (!e.is_number()) throw invalid_input("config key '" + full(key) + "' must hold numbers");
      out.push_back(e.get<double>() * (is_length ? scale_ : 1.0));
    }
    return out;
  }

  /// Every key of the wrapped object must have been touched by now.
  void finish() const {
    if (!obj_) return;
    for (const auto& item : obj_->items()) {
      if (!known_.count(item.key())) {
        throw invalid_input("unknown config key '" + full(item.key()) + "'");
      }
    }
  }

  const json* raw() const { return obj_; }

 private:
  std::string full(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }
  void note(const std::string& key, double value, const std::string& origin) {
    if (provenance_) {
      provenance_->push_back(full(key) + " = " + std::to_string(value) + " (" + origin + ")");
    }
  }

  const json* obj_;
  std::string path_;
  double scale_;
  std::vector<std::string>* provenance_;
  std::set<std::string> known_;
};

const json* subobject(const json& root, const std::string& key) {
  if (!root.contains(key)) return nullptr;
  const json& v = root[key];
  if (!v.is_object()) throw invalid_input("config key '" + key + "' must be an object");
  return &v;
}

json parse_override(const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw invalid_input("override must look like key.path=value: '" + spec + "'");
  }
  const std::string path = spec.substr(0, eq);
  const std::string value = spec.substr(eq + 1);

  json leaf;
  try {
    leaf = json::parse(value);
  } catch (const json::parse_error&) {
    leaf = value;  // bare strings are allowed
  }

  json patch = leaf;
  std::size_t end = path.size();
  for (;;) {
    const auto dot = path.rfind('.', end - 1);
    const std::string key =
        dot == std::string::npos ? path.substr(0, end) : path.substr(dot + 1, end - dot - 1);
    if (key.empty()) throw invalid_input("override has an empty key segment: '" + spec + "'");
    json wrapper;
    wrapper[key] = patch;
    patch = std::move(wrapper);
    if (dot == std::string::npos) break;
    end = dot;
  }
  return patch;
}

lab::TerrainProfile catalog_by_name(const std::string& name) {
  for (auto& t : lab::terrain_catalog()) {
    if (t.name == name) return t;
  }
  throw invalid_input("unknown terrain name '" + name + "' (try one of the catalog names)");
}

}  // namespace

std::vector<double> MapGridSpec::e_bar_values() const {
  return linspace(e_bar_min, e_bar_max, e_bar_count);
}
std::vector<double> MapGridSpec::e0_values() const { return linspace(e0_min, e0_max, e0_count); }

RunConfig parse_config(const std::optional<std::filesystem::path>& path,
                       const std::vector<std::string>& overrides) {
  json root = json::object();
  if (path) {
    std::ifstream in(*path);
    if (!in) throw invalid_input("cannot read config file: " + path->string());
    try {
      in >> root;
    } catch (const json::parse_error& e) {
      throw invalid_input("config is not valid JSON (" + path->string() + "): " + e.what());
    }
    if (!root.is_object()) throw invalid_input("config root must be a JSON object");
  }
  for (const auto& o : overrides) {
    root.merge_patch(parse_override(o));
  }

  RunConfig cfg;
  auto& prov = cfg.provenance;

  {
    Section top(&root, "", 1.0, nullptr);
    const int schema = top.integer("schema", 1, "assumed");
    require(schema == 1, "unsupported config schema (expected 1)");
    cfg.units = top.text("units", "m", "default");
    if (cfg.units != "m" && cfg.units != "mm") {
      throw invalid_input("units must be \"m\" or \"mm\", got '" + cfg.units + "'");
    }
    cfg.out_dir = top.text("out", "out", "default");
    cfg.seed = static_cast<unsigned>(top.integer("seed", 0, "default"));
    top.has("softfoot");
    top.has("load");
    top.has("rigid");
    top.has("compliant");
    top.has("adaptive");
    top.has("terrain");
    top.has("sweep");
    top.has("map");
    top.has("gallery");
    top.finish();
  }
  const double scale = cfg.units == "mm" ? 1e-3 : 1.0;

  {
    Section s(subobject(root, "softfoot"), "softfoot", scale, &prov);
    auto& p = cfg.softfoot;
    p.n = s.integer("n", 6, "nominal");
    p.phalanx_length = s.number("L", 0.02, true, "default");
    p.arch_front_length = s.number("a", 0.04, true, "default");
    p.arch_heel_length = s.number("b", 0.04, true, "default");
    p.alpha_bar = s.number("alpha_bar", M_PI / 6.0, false, "nominal");
    p.beta_bar = s.number("beta_bar", M_PI / 3.0, false, "nominal");
    p.arch_stiffness = s.number("e0", 2.5, false, "nominal, half-compression calibration");

    if (s.has("E")) {
      const auto values = s.numbers("E", false);
      p.joint_stiffness = Eigen::Map<const Eigen::VectorXd>(values.data(),
                                                            static_cast<long>(values.size()));
    } else {
      const double e_bar = s.number("e_bar", 2.5, false, "nominal, half-compression calibration");
      p.joint_stiffness = Eigen::VectorXd::Constant(p.n + 2, e_bar);
    }
    if (s.has("pulley_radii")) {
      const auto values = s.numbers("pulley_radii", true);
      p.pulley_radii = Eigen::Map<const Eigen::VectorXd>(values.data(),
                                                         static_cast<long>(values.size()));
    } else {
      const double r = s.number("pulley_radius", 1.5e-3, true, "nominal pulley radius");
      p.pulley_radii = Eigen::VectorXd::Constant(p.n + 3, r);
    }
    p.tendon_length_offset = s.number("sigma", 0.0, true, "default");
    p.terrain_height = s.number("delta", 0.0, true, "default");
    p.pretension_angle = s.number("beta_pre", p.beta_bar, false, "defaults to beta_bar");
    p.load_arm = s.number("x_H", p.arch_heel_length, true, "defaults to b");
    s.finish();
    p.validate();
  }

  {
    Section s(subobject(root, "load"), "load", 1.0, &prov);
    const bool has_force = s.has("force_N");
    const bool has_mass = s.has("mass_kg");
    if (has_force && has_mass) {
      throw invalid_input("load: give either force_N or mass_kg, not both");
    }
    if (has_force) {
      cfg.load.force = s.number("force_N", 0.0, false, "given");
    } else {
      cfg.load = model::FootLoad::from_mass(s.number("mass_kg", 1.5, false, "experiment load"));
    }
    s.finish();
    cfg.load.validate();
  }

  {
    Section s(subobject(root, "rigid"), "rigid", scale, &prov);
    auto& r = cfg.rigid;
    r.sole_length = s.number("L", 0.219, true, "219 mm reference sole");
    r.leg_height = s.number("H", 0.25, true, "250 mm ankle-to-COM");
    r.obstacle_position = s.number("obstacle_position", 0.0, true, "default");
    r.obstacle_height = s.number("obstacle_height", 0.0, true, "default");
    r.ankle_limit = s.number("theta_max", 0.6, false, "default");
    s.finish();
    r.validate();
  }

  {
    Section s(subobject(root, "compliant"), "compliant", scale, &prov);
    auto& c = cfg.compliant;
    c.spring_stiffness = s.number("k", 2000.0, false, "default");
    c.sole_length = s.number("L", 0.219, true, "219 mm reference sole");
    c.load = s.number("P", 15.0, false, "experiment load");
    c.mass = s.number("mass", 1.53, false, "default");
    c.gravity = s.number("gravity", kGravity, false, "standard gravity");
    c.leg_height = s.number("H", 0.25, true, "250 mm ankle-to-COM");
    s.finish();
    c.validate();
  }

  {
    Section s(subobject(root, "adaptive"), "adaptive", scale, &prov);
    auto& a = cfg.adaptive;
    a.sole_length = s.number("L", 0.2, true, "default");
    a.load = s.number("P", 15.0, false, "experiment load");
    a.com_position = s.number("x_com", 0.1, true, "default");
    a.alpha1 = s.number("alpha1", M_PI / 6.0, false, "default");
    a.alpha2 = s.number("alpha2", M_PI / 6.0, false, "default");
    a.alpha_h = s.number("alpha_H", M_PI / 6.0, false, "default");
    s.finish();
    a.validate();
  }

  if (root.contains("terrain") && root["terrain"].is_string()) {
    const std::string name = root["terrain"].get<std::string>();
    if (name == "catalog") {
      cfg.terrain_catalog_all = true;
      cfg.terrain = lab::terrain_catalog().front();
    } else {
      cfg.terrain = catalog_by_name(name);
    }
  } else {
    Section s(subobject(root, "terrain"), "terrain", scale, &prov);
    if (!s.raw()) {
      prov.push_back("terrain = \"flat\" (default)");
      cfg.terrain = lab::terrain_catalog().front();
    } else {
      lab::TerrainProfile t;
      t.name = s.text("name", "custom", "default");
      const std::string kind = s.text("kind", "custom", "default");
      if (kind == "flat") t.kind = lab::TerrainKind::flat;
      else if (kind == "step") t.kind = lab::TerrainKind::step;
      else if (kind == "bump") t.kind = lab::TerrainKind::bump;
      else if (kind == "ridge") t.kind = lab::TerrainKind::ridge;
      else if (kind == "custom") t.kind = lab::TerrainKind::custom;
      else throw invalid_input("terrain.kind must be flat|step|bump|ridge|custom");
      const auto positions = s.numbers("positions", true);
      const auto heights = s.numbers("heights", true);
      require(positions.size() == heights.size(), "terrain positions/heights must match");
      for (std::size_t i = 0; i < positions.size(); ++i) {
        t.features.push_back({positions[i], heights[i]});
      }
      if (s.has("plateau_after_last")) {
        const json& v = (*s.raw())["plateau_after_last"];
        if (!v.is_boolean()) throw invalid_input("terrain.plateau_after_last must be a boolean");
        t.plateau_after_last = v.get<bool>();
      }
      t.softfoot_delta = s.number("softfoot_delta", 0.0, true, "default");
      s.finish();
      t.validate();
      cfg.terrain = std::move(t);
    }
  }

  {
    Section s(subobject(root, "sweep"), "sweep", scale, &prov);
    auto& sw = cfg.sweep;
    const std::string foot = s.text("foot_model", "softfoot", "default");
    if (foot == "rigid") sw.foot_model = lab::FootModelKind::rigid;
    else if (foot == "compliant") sw.foot_model = lab::FootModelKind::compliant;
    else if (foot == "softfoot") sw.foot_model = lab::FootModelKind::softfoot;
    else if (foot == "all") cfg.sweep_all_feet = true;
    else throw invalid_input("sweep.foot_model must be rigid|compliant|softfoot|all");
    const std::string par = s.text("parameter", "load-arm", "default");
    if (par == "load-arm") sw.parameter = lab::SweptParameter::load_arm;
    else if (par == "com-offset") sw.parameter = lab::SweptParameter::com_offset;
    else throw invalid_input("sweep.parameter must be load-arm|com-offset");
    sw.min = s.number("min", 0.004, true, "default");
    sw.max = s.number("max", 0.1, true, "default");
    sw.step = s.number("step", 0.002, true, "default");
    sw.ankle_limit = s.number("theta_max", 0.6, false, "default");
    sw.load = s.number("load", 15.0, false, "experiment load");
    s.finish();
    sw.validate();
  }

  {
    Section s(subobject(root, "map"), "map", 1.0, &prov);
    auto& m = cfg.map;
    m.e_bar_min = s.number("e_bar_min", 1.0, false, "default");
    m.e_bar_max = s.number("e_bar_max", 6.0, false, "default");
    m.e_bar_count = s.integer("e_bar_count", 20, "default");
    m.e0_min = s.number("e0_min", 1.0, false, "default");
    m.e0_max = s.number("e0_max", 6.0, false, "default");
    m.e0_count = s.integer("e0_count", 20, "default");
    if (s.has("loads_kg")) m.loads_kg = s.numbers("loads_kg", false);
    s.finish();
    require(m.e_bar_min > 0 && m.e_bar_max >= m.e_bar_min && m.e_bar_count >= 1,
            "map e_bar grid must be positive and ordered");
    require(m.e0_min > 0 && m.e0_max >= m.e0_min && m.e0_count >= 1,
            "map e0 grid must be positive and ordered");
    require(!m.loads_kg.empty(), "map.loads_kg must be nonempty");
  }

  {
    Section s(subobject(root, "gallery"), "gallery", 1.0, &prov);
    if (s.has("loads_kg")) cfg.gallery_loads_kg = s.numbers("loads_kg", false);
    s.finish();
    require(!cfg.gallery_loads_kg.empty(), "gallery.loads_kg must be nonempty");
  }

  for (const auto& line : cfg.provenance) log_info("config default: " + line);
  return cfg;
}

}  // namespace softfoot::cli
