#include "normsim/model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <sstream>

namespace normsim {
namespace {

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

struct AttributeInfo {
  std::string_view name;
  std::vector<std::string_view> domain;
};

const std::array<AttributeInfo, kAttributeCount>& attribute_table() {
  static const std::array<AttributeInfo, kAttributeCount> table{{
      {"Risk", {"NONE", "RISK"}},
      {"Preference", {"WEAR", "NOT_WEAR"}},
      {"InteractWith", {"FAMILY", "FRIEND", "COLLEAGUE", "STRANGER", "NOBODY"}},
      {"ObserverAgentType", {"HEALTH", "FREEDOM", "NOBODY"}},
      {"Location", {"HOME", "OFFICE", "PARTY", "PARK", "HOSPITAL"}},
      {"RiskFromAnother", {"NONE", "HIGH"}},
  }};
  return table;
}

template <typename Enum, std::size_t N>
std::optional<Enum> parse_enum(std::string_view name, const std::array<std::string_view, N>& names) {
  name = trim(name);
  for (std::size_t i = 0; i < N; ++i) {
    if (iequals(name, names[i])) return static_cast<Enum>(i);
  }
  return std::nullopt;
}

constexpr std::array<std::string_view, kActionCount> kActionNames{"WEAR", "NOT_WEAR"};
constexpr std::array<std::string_view, kAgentTypeCount> kAgentTypeNames{"HEALTH", "FREEDOM"};
constexpr std::array<std::string_view, kPlaceCount> kPlaceNames{"HOME", "OFFICE", "PARTY", "PARK",
                                                                "HOSPITAL"};
constexpr std::array<std::string_view, kValueCount> kValueNames{"health", "freedom"};
constexpr std::array<std::string_view, kCircleCount> kCircleNames{"FAMILY", "FRIEND", "COLLEAGUE",
                                                                  "STRANGER"};

}  // namespace

std::string_view attribute_name(Attribute a) { return attribute_table()[index_of(a)].name; }

std::optional<Attribute> parse_attribute(std::string_view name) {
  name = trim(name);
  const auto& table = attribute_table();
  for (std::size_t i = 0; i < kAttributeCount; ++i) {
    if (iequals(name, table[i].name)) return static_cast<Attribute>(i);
  }
  // Spellings seen in published norm listings.
  if (iequals(name, "OtherAgentType") || iequals(name, "OberverAgentType")) {
    return Attribute::ObserverAgentType;
  }
  if (iequals(name, "Relationship")) return Attribute::InteractWith;
  return std::nullopt;
}

std::size_t domain_size(Attribute a) { return attribute_table()[index_of(a)].domain.size(); }

std::string_view binding_name(Attribute a, Binding b) {
  const auto& domain = attribute_table()[index_of(a)].domain;
  if (b >= domain.size()) throw std::invalid_argument("binding out of domain");
  return domain[b];
}

std::optional<Binding> parse_binding(Attribute a, std::string_view name) {
  name = trim(name);
  const auto& domain = attribute_table()[index_of(a)].domain;
  for (std::size_t i = 0; i < domain.size(); ++i) {
    if (iequals(name, domain[i])) return static_cast<Binding>(i);
  }
  if (a == Attribute::Preference && (iequals(name, "~WEAR") || iequals(name, "NOTWEAR"))) {
    return bind::kPrefNotWear;
  }
  return std::nullopt;
}

std::string_view action_name(Action a) { return kActionNames[index_of(a)]; }
std::optional<Action> parse_action(std::string_view name) {
  if (iequals(trim(name), "~WEAR")) return Action::NotWear;
  return parse_enum<Action>(name, kActionNames);
}
std::string_view agent_type_name(AgentType t) { return kAgentTypeNames[index_of(t)]; }
std::string_view place_name(Place p) { return kPlaceNames[index_of(p)]; }
std::optional<Place> parse_place(std::string_view name) { return parse_enum<Place>(name, kPlaceNames); }
std::string_view value_name(Value v) { return kValueNames[index_of(v)]; }
std::optional<Value> parse_value(std::string_view name) { return parse_enum<Value>(name, kValueNames); }
std::string_view circle_name(Circle c) { return kCircleNames[static_cast<std::size_t>(c)]; }

AttributeBinding AttributeBinding::make(Attribute a, Binding b) {
  if (b >= domain_size(a)) {
    throw std::invalid_argument("binding " + std::to_string(b) + " outside domain of " +
                                std::string(attribute_name(a)));
  }
  return {a, b};
}

ContextVector::ContextVector(std::initializer_list<AttributeBinding> bindings) {
  slots_.fill(kUnbound);
  for (const auto& ab : bindings) {
    if (has(ab.attribute)) {
      throw std::invalid_argument("duplicate attribute " + std::string(attribute_name(ab.attribute)));
    }
    set(ab.attribute, ab.binding);
  }
}

void ContextVector::set(Attribute a, Binding b) {
  slots_[index_of(a)] = AttributeBinding::make(a, b).binding;
}

std::size_t ContextVector::size() const {
  return static_cast<std::size_t>(
      std::count_if(slots_.begin(), slots_.end(), [](Binding b) { return b != kUnbound; }));
}

std::vector<AttributeBinding> ContextVector::bindings() const {
  std::vector<AttributeBinding> out;
  for (Attribute a : kAllAttributes) {
    if (auto b = get(a)) out.push_back({a, *b});
  }
  return out;
}

bool ContextVector::is_subset_of(const ContextVector& other) const {
  for (std::size_t i = 0; i < kAttributeCount; ++i) {
    if (slots_[i] != kUnbound && slots_[i] != other.slots_[i]) return false;
  }
  return true;
}

std::uint32_t ContextVector::key() const {
  std::uint32_t k = 0;
  for (std::size_t i = 0; i < kAttributeCount; ++i) {
    const std::uint32_t nibble = slots_[i] == kUnbound ? 0xFu : slots_[i];
    k |= nibble << (4 * i);
  }
  return k;
}

std::string to_string(const ContextVector& ctx) {
  auto bs = ctx.bindings();
  if (bs.empty()) return "*";
  std::sort(bs.begin(), bs.end(), [](const AttributeBinding& x, const AttributeBinding& y) {
    return attribute_name(x.attribute) < attribute_name(y.attribute);
  });
  std::string out;
  for (const auto& b : bs) {
    if (!out.empty()) out += ';';
    out += attribute_name(b.attribute);
    out += '=';
    out += binding_name(b.attribute, b.binding);
  }
  return out;
}

ContextVector parse_context(std::string_view text) {
  ContextVector ctx;
  text = trim(text);
  if (!text.empty() && text.front() == '{' && text.back() == '}') {
    text = trim(text.substr(1, text.size() - 2));
  }
  if (text.empty() || text == "*") return ctx;
  while (!text.empty()) {
    const auto sep = text.find_first_of(";,");
    std::string_view item = trim(text.substr(0, sep));
    text = sep == std::string_view::npos ? std::string_view{} : text.substr(sep + 1);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("premise item without '=': " + std::string(item));
    }
    const auto attr = parse_attribute(item.substr(0, eq));
    if (!attr) throw std::invalid_argument("unknown attribute: " + std::string(item.substr(0, eq)));
    const auto b = parse_binding(*attr, item.substr(eq + 1));
    if (!b) throw std::invalid_argument("unknown binding: " + std::string(item));
    if (ctx.has(*attr)) throw std::invalid_argument("duplicate attribute: " + std::string(item));
    ctx.set(*attr, *b);
  }
  return ctx;
}

PrivacyTags PrivacyTags::defaults() {
  PrivacyTags tags;
  tags.is_private[index_of(Attribute::Risk)] = true;
  tags.is_private[index_of(Attribute::Preference)] = true;
  tags.is_private[index_of(Attribute::RiskFromAnother)] = true;
  return tags;
}

std::size_t count_private(const ContextVector& ctx, const PrivacyTags& tags) {
  std::size_t n = 0;
  for (Attribute a : kAllAttributes) {
    if (ctx.has(a) && tags.private_attribute(a)) ++n;
  }
  return n;
}

bool matches(const ContextVector& premise, const ContextVector& ctx) {
  return premise.is_subset_of(ctx);
}

bool is_more_general(const Classifier& a, const Classifier& b) {
  if (a.action != b.action) return false;
  return a.premise.size() < b.premise.size() && a.premise.is_subset_of(b.premise);
}

ValueImportance ValueImportance::make(std::string context_key, std::array<double, kValueCount> weights) {
  double sum = 0.0;
  for (std::size_t i = 0; i < kValueCount; ++i) {
    const double w = weights[i];
    if (!(w >= 0.0 && w <= 1.0)) {
      throw ConfigError("value importance for '" + std::string(value_name(static_cast<Value>(i))) +
                        "' outside [0,1]");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    std::ostringstream msg;
    msg << "value importances for context '" << context_key << "' sum to " << sum << ", not 1";
    throw ConfigError(msg.str());
  }
  return ValueImportance(std::move(context_key), weights);
}

const ValueImportance& AgentProfile::importance_for(std::string_view context_class) const {
  for (const auto& vi : value_importances) {
    if (vi.context_key() == context_class) return vi;
  }
  throw ConfigError("agent " + std::to_string(id) + " has no value importance for context '" +
                    std::string(context_class) + "'");
}

double RationaleMessage::privacy() const {
  if (total_private_count == 0) return 1.0;
  return 1.0 - static_cast<double>(disclosed_private_count) / total_private_count;
}

}  // namespace normsim
