#pragma once
// Domain types shared by every normsim module: attributes and their closed
// binding domains, context vectors, rules, value importances, rationales and
// sanctions. Nothing here owns behaviour beyond validation and matching.

#include <array>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace normsim {

// Raised for invalid experiment/scenario configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Attribute : std::uint8_t {
  Risk,
  Preference,
  InteractWith,
  ObserverAgentType,
  Location,
  RiskFromAnother,
};
inline constexpr std::size_t kAttributeCount = 6;
inline constexpr std::array<Attribute, kAttributeCount> kAllAttributes{
    Attribute::Risk,     Attribute::Preference, Attribute::InteractWith,
    Attribute::ObserverAgentType, Attribute::Location, Attribute::RiskFromAnother};

constexpr std::size_t index_of(Attribute a) { return static_cast<std::size_t>(a); }

// A binding is the ordinal of a value inside its attribute's domain.
using Binding = std::uint8_t;

enum class Action : std::uint8_t { Wear, NotWear };
inline constexpr std::size_t kActionCount = 2;
inline constexpr std::array<Action, kActionCount> kAllActions{Action::Wear, Action::NotWear};
constexpr std::size_t index_of(Action a) { return static_cast<std::size_t>(a); }

enum class AgentType : std::uint8_t { Health, Freedom };
inline constexpr std::size_t kAgentTypeCount = 2;
constexpr std::size_t index_of(AgentType t) { return static_cast<std::size_t>(t); }

enum class Circle : std::uint8_t { Family, Friend, Colleague, Stranger };
inline constexpr std::size_t kCircleCount = 4;

// Place categories; the world holds several instances of some of them.
enum class Place : std::uint8_t { Home, Office, Party, Park, Hospital };
inline constexpr std::size_t kPlaceCount = 5;
inline constexpr std::array<Place, kPlaceCount> kAllPlaces{Place::Home, Place::Office, Place::Party,
                                                           Place::Park, Place::Hospital};
constexpr std::size_t index_of(Place p) { return static_cast<std::size_t>(p); }

enum class RiskLevel : std::uint8_t { None, Risk };

enum class Value : std::uint8_t { Health, Freedom };
inline constexpr std::size_t kValueCount = 2;
inline constexpr std::array<Value, kValueCount> kAllValues{Value::Health, Value::Freedom};
constexpr std::size_t index_of(Value v) { return static_cast<std::size_t>(v); }

enum class Decision : std::uint8_t { Accept, Reject };

// Bindings for the scenario attributes. InteractWith and ObserverAgentType
// carry a NOBODY binding used when an agent acts without a partner.
namespace bind {
inline constexpr Binding kRiskNone = 0;
inline constexpr Binding kRiskRisk = 1;
inline constexpr Binding kPrefWear = 0;
inline constexpr Binding kPrefNotWear = 1;
inline constexpr Binding kWithFamily = 0;
inline constexpr Binding kWithFriend = 1;
inline constexpr Binding kWithColleague = 2;
inline constexpr Binding kWithStranger = 3;
inline constexpr Binding kWithNobody = 4;
inline constexpr Binding kObserverHealth = 0;
inline constexpr Binding kObserverFreedom = 1;
inline constexpr Binding kObserverNobody = 2;
inline constexpr Binding kRiskFromAnotherNone = 0;
inline constexpr Binding kRiskFromAnotherHigh = 1;

constexpr Binding of(RiskLevel r) { return static_cast<Binding>(r); }
constexpr Binding of(Action a) { return static_cast<Binding>(a); }
constexpr Binding of(Circle c) { return static_cast<Binding>(c); }
constexpr Binding of(AgentType t) { return static_cast<Binding>(t); }
constexpr Binding of(Place p) { return static_cast<Binding>(p); }
}  // namespace bind

std::string_view attribute_name(Attribute a);
std::optional<Attribute> parse_attribute(std::string_view name);
std::size_t domain_size(Attribute a);
std::string_view binding_name(Attribute a, Binding b);
std::optional<Binding> parse_binding(Attribute a, std::string_view name);

std::string_view action_name(Action a);
std::optional<Action> parse_action(std::string_view name);
std::string_view agent_type_name(AgentType t);
std::string_view place_name(Place p);
std::optional<Place> parse_place(std::string_view name);
std::string_view value_name(Value v);
std::optional<Value> parse_value(std::string_view name);
std::string_view circle_name(Circle c);

struct AttributeBinding {
  Attribute attribute;
  Binding binding;

  // Throws std::invalid_argument when the binding is outside the domain.
  static AttributeBinding make(Attribute a, Binding b);
  friend bool operator==(const AttributeBinding&, const AttributeBinding&) = default;
};

// Attribute -> binding map with at most one binding per attribute. Used both
// for fully bound situations and for rule premises, where an absent attribute
// is a wildcard.
class ContextVector {
 public:
  ContextVector() { slots_.fill(kUnbound); }
  // Throws std::invalid_argument on duplicate attributes or bad bindings.
  ContextVector(std::initializer_list<AttributeBinding> bindings);

  void set(Attribute a, Binding b);
  void erase(Attribute a) { slots_[index_of(a)] = kUnbound; }
  bool has(Attribute a) const { return slots_[index_of(a)] != kUnbound; }
  std::optional<Binding> get(Attribute a) const {
    const Binding b = slots_[index_of(a)];
    if (b == kUnbound) return std::nullopt;
    return b;
  }

  std::size_t size() const;
  bool empty() const { return size() == 0; }
  std::vector<AttributeBinding> bindings() const;

  // True iff every binding here appears identically in `other`.
  bool is_subset_of(const ContextVector& other) const;

  // Dense 4-bit-per-attribute encoding; distinct vectors get distinct keys.
  std::uint32_t key() const;

  friend bool operator==(const ContextVector&, const ContextVector&) = default;

 private:
  static constexpr Binding kUnbound = 0xFF;
  std::array<Binding, kAttributeCount> slots_{};
};

// "Attr=VAL;Attr=VAL" sorted by attribute name; the empty premise is "*".
std::string to_string(const ContextVector& ctx);
// Inverse of to_string. Attribute and binding names are case-insensitive.
ContextVector parse_context(std::string_view text);

// Public/private flag per attribute.
struct PrivacyTags {
  std::array<bool, kAttributeCount> is_private{};

  // Location, InteractWith, ObserverAgentType public; Risk, Preference,
  // RiskFromAnother private.
  static PrivacyTags defaults();
  bool private_attribute(Attribute a) const { return is_private[index_of(a)]; }
};

std::size_t count_private(const ContextVector& ctx, const PrivacyTags& tags);

// True iff every non-wildcard attribute of `premise` has an equal binding in
// `ctx`. An attribute missing from `ctx` never satisfies a bound premise slot.
bool matches(const ContextVector& premise, const ContextVector& ctx);

struct Classifier {
  ContextVector premise;
  Action action = Action::Wear;
  double prediction = 0.0;
  double error = 0.0;
  double fitness = 0.0;
  int numerosity = 1;
  int experience = 0;
  double accuracy = 1.0;
  std::int64_t ga_timestamp = 0;
};

// a is strictly more general than b: same action, a's bound attributes are a
// strict subset of b's, and every shared binding agrees.
bool is_more_general(const Classifier& a, const Classifier& b);

// Weights over values for one context class. Constructed only through make(),
// which enforces v_i in [0,1] and sum 1 within 1e-9.
class ValueImportance {
 public:
  static ValueImportance make(std::string context_key, std::array<double, kValueCount> weights);

  const std::string& context_key() const { return context_key_; }
  double weight(Value v) const { return weights_[index_of(v)]; }
  const std::array<double, kValueCount>& weights() const { return weights_; }

 private:
  ValueImportance(std::string key, std::array<double, kValueCount> w)
      : context_key_(std::move(key)), weights_(w) {}
  std::string context_key_;
  std::array<double, kValueCount> weights_{};
};

struct AgentProfile {
  int id = 0;
  AgentType type = AgentType::Health;
  std::vector<ValueImportance> value_importances;
  Action preference = Action::Wear;
  int home = 0;
  int office = 0;
  int party = 0;

  // Throws ConfigError when the agent has no importances for the class.
  const ValueImportance& importance_for(std::string_view context_class) const;
};

struct RationaleMessage {
  ContextVector factors;
  Action action = Action::Wear;
  int disclosed_private_count = 0;
  int total_private_count = 0;

  // 1 - disclosed/total; 1 when nothing private was in play.
  double privacy() const;
};

struct SanctionRecord {
  int from = 0;
  int to = 0;
  Decision decision = Decision::Reject;
  double magnitude = 0.0;
  Circle circle = Circle::Stranger;
};

}  // namespace normsim
