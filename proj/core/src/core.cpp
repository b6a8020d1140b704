#include "msc/core.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace msc {

void Tolerances::check() const {
  if (!(sum > 0.0) || !(tol > 0.0) || !(delta > 0.0)) {
    throw DomainError("tolerances must be strictly positive");
  }
  if (delta > tol) throw DomainError("delta tolerance must not exceed the consistency tolerance");
}

// ---------------------------------------------------------------------------
// Universe / Menu

Universe::Universe(std::vector<std::string> names) : names_(std::move(names)) {
  for (Index k = 0; k < names_.size(); ++k) {
    if (names_[k].empty()) throw StructuralError("alternative identifiers must be non-empty");
    if (!lookup_.emplace(names_[k], k).second) {
      throw StructuralError("duplicate alternative identifier '" + names_[k] + "'");
    }
  }
}

const std::string& Universe::name(Index alt) const {
  if (alt >= names_.size()) throw LookupError("alternative index out of range");
  return names_[alt];
}

std::optional<Index> Universe::find(std::string_view name) const {
  auto it = lookup_.find(name);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

Index Universe::index(std::string_view name) const {
  if (auto k = find(name)) return *k;
  throw LookupError("unknown alternative '" + std::string(name) + "'");
}

Menu::Menu(std::vector<Index> members) : members_(std::move(members)) {
  if (members_.empty()) throw StructuralError("a menu must be non-empty");
  std::sort(members_.begin(), members_.end());
  if (std::adjacent_find(members_.begin(), members_.end()) != members_.end()) {
    throw StructuralError("a menu must not contain duplicates");
  }
}

bool Menu::contains(Index alt) const {
  return std::binary_search(members_.begin(), members_.end(), alt);
}

std::optional<std::size_t> Menu::find(Index alt) const {
  auto it = std::lower_bound(members_.begin(), members_.end(), alt);
  if (it == members_.end() || *it != alt) return std::nullopt;
  return static_cast<std::size_t>(it - members_.begin());
}

std::size_t Menu::position(Index alt) const {
  if (auto pos = find(alt)) return *pos;
  throw LookupError("alternative is not a member of the menu");
}

bool Menu::is_subset_of(const Menu& other) const {
  return std::includes(other.members_.begin(), other.members_.end(), members_.begin(),
                       members_.end());
}

std::vector<AltPair> Menu::pairs() const {
  std::vector<AltPair> out;
  for (std::size_t a = 0; a < members_.size(); ++a) {
    for (std::size_t b = a + 1; b < members_.size(); ++b) out.emplace_back(members_[a], members_[b]);
  }
  return out;
}

std::string to_string(const Menu& menu, const Universe& universe) {
  std::string out = "{";
  for (std::size_t k = 0; k < menu.size(); ++k) {
    if (k) out += ",";
    out += universe.name(menu[k]);
  }
  return out + "}";
}

Menu parse_menu(std::string_view csv, const Universe& universe) {
  std::vector<Index> members;
  std::size_t start = 0;
  while (start <= csv.size()) {
    std::size_t stop = csv.find(',', start);
    if (stop == std::string_view::npos) stop = csv.size();
    std::string_view token = csv.substr(start, stop - start);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    if (token.empty()) throw StructuralError("empty alternative in menu '" + std::string(csv) + "'");
    members.push_back(universe.index(token));
    start = stop + 1;
  }
  return Menu(std::move(members));
}

// ---------------------------------------------------------------------------
// ChoiceDataset

namespace {

void check_menu_in_universe(const Menu& menu, const Universe& universe) {
  for (Index alt : menu) {
    if (alt >= universe.size()) throw StructuralError("menu member outside the universe");
  }
}

}  // namespace

void ChoiceDataset::set(const Menu& menu, Vector probabilities, std::vector<std::string> decimals) {
  check_menu_in_universe(menu, universe_);
  if (static_cast<std::size_t>(probabilities.size()) != menu.size()) {
    throw StructuralError("probability vector length does not match menu " +
                          to_string(menu, universe_));
  }
  if (!decimals.empty() && decimals.size() != menu.size()) {
    throw StructuralError("decimal literal count does not match menu");
  }
  entries_[menu] = Entry{std::move(probabilities), std::move(decimals)};
}

void ChoiceDataset::set_decimal(const Menu& menu, std::vector<std::string> decimals) {
  Vector p(static_cast<Eigen::Index>(decimals.size()));
  for (std::size_t k = 0; k < decimals.size(); ++k) {
    p[static_cast<Eigen::Index>(k)] = to_double(parse_decimal(decimals[k]));
  }
  set(menu, std::move(p), std::move(decimals));
}

const ChoiceDataset::Entry& ChoiceDataset::entry(const Menu& menu) const {
  auto it = entries_.find(menu);
  if (it == entries_.end()) {
    throw LookupError("menu " + to_string(menu, universe_) + " is not stored in the dataset");
  }
  return it->second;
}

const Vector& ChoiceDataset::choice(const Menu& menu) const { return entry(menu).probabilities; }

double ChoiceDataset::prob(Index alt, const Menu& menu) const {
  const Entry& e = entry(menu);
  auto pos = menu.find(alt);
  return pos ? e.probabilities[static_cast<Eigen::Index>(*pos)] : 0.0;
}

Rational ChoiceDataset::exact_prob(Index alt, const Menu& menu) const {
  const Entry& e = entry(menu);
  auto pos = menu.find(alt);
  if (!pos) return Rational(0);
  if (!e.decimals.empty()) return parse_decimal(e.decimals[*pos]);
  return exact_from_double(e.probabilities[static_cast<Eigen::Index>(*pos)]);
}

double binary_share(const ChoiceDataset& data, Index i, Index j) {
  if (i == j) throw LookupError("binary_share needs two distinct alternatives");
  return data.prob(i, Menu::pair(i, j));
}

ValidationReport validate_dataset(const ChoiceDataset& data, const Tolerances& tol) {
  ValidationReport report;
  const Universe& u = data.universe();
  std::set<Menu> missing_reported;
  for (const auto& [menu, entry] : data.entries()) {
    const Vector& p = entry.probabilities;
    for (std::size_t k = 0; k < menu.size(); ++k) {
      double v = p[static_cast<Eigen::Index>(k)];
      if (!(v >= 0.0 && v <= 1.0)) {
        std::ostringstream msg;
        msg << "p(" << u.name(menu[k]) << "|" << to_string(menu, u) << ") = " << v
            << " outside [0,1]";
        report.violations.push_back({"range", menu, msg.str()});
      }
    }
    double total = p.sum();
    if (!(std::abs(total - 1.0) <= tol.sum)) {
      std::ostringstream msg;
      msg << "sum " << total << " != 1 on " << to_string(menu, u);
      report.violations.push_back({"sum", menu, msg.str()});
    }
    if (menu.size() >= 3) {
      for (auto [a, b] : menu.pairs()) {
        Menu binary = Menu::pair(a, b);
        if (!data.contains(binary) && missing_reported.insert(binary).second) {
          report.violations.push_back({"missing_binary_menu", binary,
                                       "missing binary menu " + to_string(binary, u) +
                                           " required by " + to_string(menu, u)});
        }
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// MscModel

void MscModel::set_block(const Menu& menu, ModelBlock block) {
  check_menu_in_universe(menu, universe_);
  const auto n = static_cast<Eigen::Index>(menu.size());
  if (block.q.rows() != n || block.q.cols() != n || block.pi.size() != n) {
    throw StructuralError("block dimensions do not match menu " + to_string(menu, universe_));
  }
  blocks_[menu] = std::move(block);
}

const ModelBlock& MscModel::block(const Menu& menu) const {
  auto it = blocks_.find(menu);
  if (it == blocks_.end()) {
    throw LookupError("menu " + to_string(menu, universe_) + " has no block in the model");
  }
  return it->second;
}

ModelBlock& MscModel::block(const Menu& menu) {
  return const_cast<ModelBlock&>(static_cast<const MscModel&>(*this).block(menu));
}

std::string_view to_string(Assumption assumption) {
  switch (assumption) {
    case Assumption::prolonged_consideration: return "prolonged_consideration";
    case Assumption::binary_comparability: return "binary_comparability";
    case Assumption::transition_ratio_iia: return "transition_ratio_iia";
  }
  return "unknown";
}

AssumptionReport validate_model(const MscModel& model, const Tolerances& tol) {
  AssumptionReport report;
  const Universe& u = model.universe();
  for (const auto& [menu, block] : model.blocks()) {
    const auto n = static_cast<Eigen::Index>(menu.size());
    if (block.q.rows() != n || block.q.cols() != n || block.pi.size() != n) {
      throw StructuralError("block dimensions do not match menu " + to_string(menu, u));
    }
    for (Eigen::Index r = 0; r < n; ++r) {
      for (Eigen::Index c = 0; c < n; ++c) {
        double v = block.q(r, c);
        if (!(v >= 0.0 && v <= 1.0)) {
          report.stochastic.push_back({"range", menu, "transition probability outside [0,1]"});
        }
      }
      if (!(std::abs(block.q.row(r).sum() - 1.0) <= tol.sum)) {
        report.stochastic.push_back(
            {"row_sum", menu, "row of " + u.name(menu[static_cast<std::size_t>(r)]) +
                                  " does not sum to 1 in " + to_string(menu, u)});
      }
      if (!(block.q(r, r) > 0.0)) {
        report.prolonged_consideration = false;
        Index alt = menu[static_cast<std::size_t>(r)];
        report.failures.push_back({Assumption::prolonged_consideration, menu, alt, alt,
                                   "q_ii = 0 for " + u.name(alt)});
      }
    }
    if (!(block.pi.minCoeff() >= 0.0) || !(std::abs(block.pi.sum() - 1.0) <= tol.sum)) {
      report.stochastic.push_back({"initial", menu, "initial distribution is not on the simplex"});
    }

    if (menu.is_binary()) {
      if (block.q(0, 1) == 0.0 && block.q(1, 0) == 0.0) {
        report.binary_comparability = false;
        report.failures.push_back({Assumption::binary_comparability, menu, menu[0], menu[1],
                                   "no transition in either direction"});
      }
      continue;
    }
    for (std::size_t a = 0; a < menu.size(); ++a) {
      for (std::size_t b = a + 1; b < menu.size(); ++b) {
        Menu binary = Menu::pair(menu[a], menu[b]);
        if (!model.contains(binary)) {
          report.ratio_unchecked.push_back({menu, {menu[a], menu[b]}});
          continue;
        }
        const Matrix& qb = model.block(binary).q;
        double lhs = qb(0, 1) * block.q(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a));
        double rhs = qb(1, 0) * block.q(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
        if (!(std::abs(lhs - rhs) <= tol.tol)) {
          report.transition_ratio_iia = false;
          report.failures.push_back({Assumption::transition_ratio_iia, menu, menu[a], menu[b],
                                     "transition ratio differs from the binary menu"});
        }
      }
    }
  }
  return report;
}

}  // namespace msc
