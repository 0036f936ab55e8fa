#include "ergolab/config.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "ergolab/errors.hpp"

namespace ergolab::config {

namespace {

std::string type_name(const Json& v) { return v.type_name(); }

std::string variant_of(const Field& f) { return f.at("variant").string(); }

}  // namespace

// ---------------------------------------------------------------------------
// Field

void Field::fail(const std::string& message) const { throw ConfigError(path_ + ": " + message); }

bool Field::has(std::string_view key) const { return v_->is_object() && v_->contains(key); }

Field Field::at(std::string_view key) const {
  if (!v_->is_object()) fail("expected an object, got " + type_name(*v_));
  const auto it = v_->find(key);
  const std::string child = path_ + "." + std::string(key);
  if (it == v_->end()) throw ConfigError(child + ": missing required field");
  return Field(*it, child);
}

std::optional<Field> Field::get(std::string_view key) const {
  if (!has(key)) return std::nullopt;
  return at(key);
}

std::size_t Field::size() const {
  if (!v_->is_array()) fail("expected an array, got " + type_name(*v_));
  return v_->size();
}

Field Field::at(std::size_t i) const {
  if (i >= size()) fail("index " + std::to_string(i) + " out of range");
  return Field((*v_)[i], path_ + "[" + std::to_string(i) + "]");
}

std::int64_t Field::integer() const {
  if (v_->is_number_integer()) return v_->get<std::int64_t>();
  if (v_->is_number_float()) {
    const double d = v_->get<double>();
    if (std::floor(d) == d && std::abs(d) < 9.0e15) return static_cast<std::int64_t>(d);
  }
  fail("expected an integer, got " + (v_->is_number() ? v_->dump() : type_name(*v_)));
}

std::uint64_t Field::unsigned_integer() const {
  if (v_->is_number_unsigned()) return v_->get<std::uint64_t>();
  const std::int64_t i = integer();
  if (i < 0) fail("expected a nonnegative integer");
  return static_cast<std::uint64_t>(i);
}

double Field::number() const {
  if (!v_->is_number()) fail("expected a number, got " + type_name(*v_));
  const double d = v_->get<double>();
  if (!std::isfinite(d)) fail("expected a finite number");
  return d;
}

std::string Field::string() const {
  if (!v_->is_string()) fail("expected a string, got " + type_name(*v_));
  return v_->get<std::string>();
}

bool Field::boolean() const {
  if (!v_->is_boolean()) fail("expected a boolean, got " + type_name(*v_));
  return v_->get<bool>();
}

Complex Field::complex() const {
  if (v_->is_number()) return {number(), 0.0};
  if (v_->is_array() && v_->size() == 2) return {at(std::size_t{0}).number(), at(std::size_t{1}).number()};
  fail("expected a number or a [re, im] pair");
}

std::vector<std::int64_t> Field::int_list() const {
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < size(); ++i) out.push_back(at(i).integer());
  return out;
}

std::vector<double> Field::number_list() const {
  std::vector<double> out;
  for (std::size_t i = 0; i < size(); ++i) out.push_back(at(i).number());
  return out;
}

std::vector<Complex> Field::complex_list() const {
  std::vector<Complex> out;
  for (std::size_t i = 0; i < size(); ++i) out.push_back(at(i).complex());
  return out;
}

// ---------------------------------------------------------------------------
// Schema

SystemSpec read_system(const Field& f) {
  const std::string v = variant_of(f);
  try {
    if (v == "permutation") return SystemSpec::finite_permutation(f.at("perm").int_list());
    if (v == "torus") {
      const Field alpha = f.at("alpha");
      if (alpha.json().is_number()) return SystemSpec::torus_rotation({alpha.number()});
      return SystemSpec::torus_rotation(alpha.number_list());
    }
    if (v == "skew") return SystemSpec::skew_product(f.at("alpha").number());
    if (v == "heisenberg") {
      const auto a = f.at("heis_a").number_list();
      if (a.size() != 3) f.at("heis_a").fail("expected three entries");
      return SystemSpec::heisenberg({a[0], a[1], a[2]});
    }
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    if (msg.rfind("$", 0) == 0) throw;
    f.fail(msg);
  }
  f.at("variant").fail("unknown system variant \"" + v + "\"");
}

StatePoint read_state(const std::optional<Field>& f, const SystemSpec& sys) {
  if (!f) {
    if (sys.is_finite()) return StatePoint::index(0);
    return StatePoint::coords(std::vector<double>(sys.dimension(), 0.0));
  }
  StatePoint x = StatePoint::index(0);
  if (f->has("index")) {
    x = StatePoint::index(f->at("index").integer());
  } else if (f->has("coords")) {
    x = StatePoint::coords(f->at("coords").number_list());
  } else {
    f->fail("expected {\"index\": i} or {\"coords\": [...]}");
  }
  try {
    validate_state(sys, x);
  } catch (const ConfigError& e) {
    f->fail(e.what());
  }
  return x;
}

HkBasePoint read_base_point(const std::optional<Field>& f, const SystemSpec& sys) {
  if (f && f->json().is_string()) {
    if (f->string() != "integrate") f->fail("expected \"integrate\" or a state object");
    if (!sys.is_finite()) f->fail("\"integrate\" needs a finite permutation system");
    return std::nullopt;
  }
  return read_state(f, sys);
}

Observable read_observable(const Field& f, const SystemSpec& sys) {
  const std::string v = variant_of(f);
  std::optional<Observable> obs;
  try {
    if (v == "character") {
      obs = Observable::character(f.at("character_m").int_list());
    } else if (v == "indicator") {
      obs = Observable::indicator_of(sys.state_count(), f.at("set").int_list());
    } else if (v == "table") {
      obs = Observable::table(f.at("table").complex_list());
    } else if (v == "heisenberg_vertical") {
      obs = Observable::heisenberg_vertical();
    } else if (v == "one") {
      const std::size_t dim = sys.is_finite() ? 1 : sys.dimension();
      obs = Observable::character(std::vector<std::int64_t>(dim, 0));
    } else {
      f.at("variant").fail("unknown observable variant \"" + v + "\"");
    }
    obs->validate_for(sys);
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    if (msg.rfind("$", 0) == 0) throw;
    f.fail(msg);
  }
  return *obs;
}

std::vector<Observable> read_observables(const Field& f, const SystemSpec& sys) {
  std::vector<Observable> out;
  for (std::size_t i = 0; i < f.size(); ++i) out.push_back(read_observable(f.at(i), sys));
  if (out.empty()) f.fail("expected at least one observable");
  return out;
}

WeightSpec read_weight(const Field& f) {
  const std::string v = variant_of(f);
  try {
    if (v == "trig") return WeightSpec::trig_phase(f.at("t").number());
    if (v == "poly") {
      const auto degree = f.has("degree") ? f.at("degree").integer() : 2;
      return WeightSpec::poly_phase(f.at("theta").number(), static_cast<int>(degree));
    }
    if (v == "heisenberg") {
      const auto a = f.at("heis_a").number_list();
      if (a.size() != 3) f.at("heis_a").fail("expected three entries");
      std::array<double, 3> x{0.0, 0.0, 0.0};
      if (const auto xs = f.get("x")) {
        const auto c = xs->number_list();
        if (c.size() != 3) xs->fail("expected three entries");
        x = {c[0], c[1], c[2]};
      }
      return WeightSpec::heisenberg_basic({a[0], a[1], a[2]}, x);
    }
    if (v == "product") {
      const Field factors = f.at("factors");
      std::vector<WeightSpec> ws;
      for (std::size_t i = 0; i < factors.size(); ++i) ws.push_back(read_weight(factors.at(i)));
      return WeightSpec::product(std::move(ws));
    }
    if (v == "shift") return WeightSpec::shift(read_weight(f.at("inner")), f.at("shift_m").integer());
    if (v == "conjugate") return WeightSpec::conjugate(read_weight(f.at("inner")));
    if (v == "constant") return WeightSpec::constant(f.at("c").complex());
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    if (msg.rfind("$", 0) == 0) throw;
    f.fail(msg);
  }
  f.at("variant").fail("unknown weight variant \"" + v + "\"");
}

std::vector<std::int64_t> read_schedule(const Field& f, std::int64_t period) {
  std::vector<std::int64_t> s;
  if (f.json().is_object()) {
    const std::int64_t max_n = f.at("max_n").integer();
    if (max_n < 1) f.at("max_n").fail("must be >= 1");
    s = default_schedule(max_n, period);
  } else {
    s = f.int_list();
  }
  try {
    validate_schedule(s);
  } catch (const ConfigError& e) {
    f.fail(e.what());
  }
  return s;
}

SequenceWindow read_sequence(const Field& f) {
  const std::int64_t offset = f.has("offset") ? f.at("offset").integer() : 0;
  try {
    if (f.has("values")) {
      std::vector<Complex> vals = f.at("values").complex_list();
      if (vals.empty()) f.at("values").fail("expected at least one value");
      if (const auto b = f.get("bound")) return SequenceWindow(offset, std::move(vals), b->number());
      return SequenceWindow::tight(offset, std::move(vals));
    }
    const Field length = f.at("length");
    const std::int64_t len = length.integer();
    if (len < 1) length.fail("must be >= 1");
    if (f.has("weight")) return weight_window(read_weight(f.at("weight")), offset, len);
    if (f.has("orbit")) {
      const Field o = f.at("orbit");
      const SystemSpec sys = read_system(o.at("system"));
      const StatePoint x = read_state(o.get("state"), sys);
      const Observable obs = read_observable(o.at("observable"), sys);
      const std::int64_t a = o.has("exponent") ? o.at("exponent").integer() : 1;
      return orbit_window(sys, x, obs, a, offset, len);
    }
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    if (msg.rfind("$", 0) == 0) throw;
    f.fail(msg);
  }
  f.fail("expected one of \"values\", \"weight\" or \"orbit\"");
}

}  // namespace ergolab::config
