#pragma once

// Readers for the JSON experiment schema.  Every error names the offending
// field by its path from the document root, e.g. "$.observables[1].table".

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ergolab/dynsys.hpp"
#include "ergolab/nilseq.hpp"
#include "ergolab/sequence.hpp"
#include "ergolab/uniformity.hpp"

namespace ergolab::config {

using Json = nlohmann::json;

/// A JSON value together with its path.
class Field {
 public:
  Field(const Json& value, std::string path) : v_(&value), path_(std::move(path)) {}

  const std::string& path() const { return path_; }
  const Json& json() const { return *v_; }

  bool has(std::string_view key) const;
  /// ConfigError "<path>.<key>: missing required field" when absent.
  Field at(std::string_view key) const;
  std::optional<Field> get(std::string_view key) const;

  std::size_t size() const;  // arrays only
  Field at(std::size_t i) const;

  std::int64_t integer() const;
  std::uint64_t unsigned_integer() const;
  double number() const;
  std::string string() const;
  bool boolean() const;
  /// A number, or a two-element array [re, im].
  Complex complex() const;
  std::vector<std::int64_t> int_list() const;
  std::vector<double> number_list() const;
  std::vector<Complex> complex_list() const;

  [[noreturn]] void fail(const std::string& message) const;

 private:
  const Json* v_;
  std::string path_;
};

/// {"variant": "permutation"|"torus"|"skew"|"heisenberg", "perm", "alpha", "heis_a"}
SystemSpec read_system(const Field& f);

/// {"index": i} or {"coords": [...]}; absent means index 0 or the origin.
StatePoint read_state(const std::optional<Field>& f, const SystemSpec& sys);

/// As read_state, plus the string "integrate" (finite systems only).
HkBasePoint read_base_point(const std::optional<Field>& f, const SystemSpec& sys);

/// {"variant": "character"|"indicator"|"table"|"heisenberg_vertical"|"one", ...}
Observable read_observable(const Field& f, const SystemSpec& sys);
std::vector<Observable> read_observables(const Field& f, const SystemSpec& sys);

/// {"variant": "trig"|"poly"|"heisenberg"|"product"|"shift"|"conjugate"|"constant", ...}
WeightSpec read_weight(const Field& f);

/// An explicit strictly increasing list, or {"max_n": M} for the default
/// dyadic schedule merged with multiples of `period` (0 for none).
std::vector<std::int64_t> read_schedule(const Field& f, std::int64_t period);

/// {"values": [...], "offset", "bound"} | {"weight": W, "offset", "length"} |
/// {"orbit": {"system", "state", "observable", "exponent"}, "offset", "length"}
SequenceWindow read_sequence(const Field& f);

}  // namespace ergolab::config
