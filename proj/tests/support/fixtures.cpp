#include "fixtures.hpp"

namespace msc::testing {

Universe ijkl() { return Universe({"i", "j", "k", "l"}); }

Menu grand() { return Menu({I, J, K, L}); }

ChoiceDataset four_way(const std::vector<std::string>& grand_menu) {
  ChoiceDataset d(ijkl());
  d.set_decimal(Menu::pair(I, J), {"0.5", "0.5"});
  d.set_decimal(Menu::pair(I, K), {"0.5", "0.5"});
  d.set_decimal(Menu::pair(I, L), {"0.5", "0.5"});
  d.set_decimal(Menu::pair(J, K), {"0.6", "0.4"});
  d.set_decimal(Menu::pair(J, L), {"0.5", "0.5"});
  d.set_decimal(Menu::pair(K, L), {"0.4", "0.6"});
  d.set_decimal(grand(), grand_menu);
  return d;
}

ChoiceDataset example1() { return four_way({"0.2", "0.2", "0.4", "0.2"}); }
ChoiceDataset example2() { return four_way({"0.25", "0.28", "0.2", "0.27"}); }
ChoiceDataset example3() { return four_way({"0.24", "0.3", "0.22", "0.24"}); }

Matrix q2() {
  Matrix q(4, 4);
  q << 0.8, 0.1, 0.0, 0.1,
       0.1, 0.8, 0.0, 0.1,
       0.0, 0.0, 1.0, 0.0,
       0.1, 0.1, 0.0, 0.8;
  return q;
}

Matrix q3() {
  Matrix q(4, 4);
  q << 0.7, 0.1, 0.1, 0.1,
       0.1, 0.72, 0.16, 0.02,
       0.1, 0.24, 0.57, 0.09,
       0.1, 0.02, 0.06, 0.82;
  return q;
}

Matrix q4() {
  Matrix q(4, 4);
  q << 0.4, 0.1, 0.3, 0.2,
       0.1, 0.7, 0.2, 0.0,
       0.3, 0.3, 0.4, 0.0,
       0.2, 0.0, 0.0, 0.8;
  return q;
}

MscModel four_way_model(const Matrix& q, const Vector& pi) {
  ChoiceDataset shares = example1();
  MscModel model(ijkl());
  for (auto [a, b] : grand().pairs()) {
    Menu m = Menu::pair(a, b);
    const Vector& p = shares.choice(m);
    Matrix qb(2, 2);
    qb << 1.0 - 0.5 * p[1], 0.5 * p[1], 0.5 * p[0], 1.0 - 0.5 * p[0];
    model.set_block(m, ModelBlock{qb, p});
  }
  model.set_block(grand(), ModelBlock{q, pi});
  return model;
}

std::vector<Menu> all_menus(std::size_t n, std::size_t min_size) {
  std::vector<Menu> out;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<Index> members;
    for (std::size_t k = 0; k < n; ++k) {
      if (mask & (1u << k)) members.push_back(k);
    }
    if (members.size() >= min_size) out.emplace_back(members);
  }
  return out;
}

ChoiceDataset luce_data(const std::vector<double>& utilities) {
  std::vector<std::string> names;
  for (std::size_t k = 0; k < utilities.size(); ++k) names.push_back("a" + std::to_string(k));
  ChoiceDataset d{Universe(names)};
  for (const Menu& m : all_menus(utilities.size())) {
    double total = 0.0;
    for (Index a : m) total += utilities[a];
    Vector p(static_cast<Eigen::Index>(m.size()));
    for (std::size_t k = 0; k < m.size(); ++k) p[static_cast<Eigen::Index>(k)] = utilities[m[k]] / total;
    d.set(m, p);
  }
  return d;
}

std::string fixture_path(const std::string& name) { return std::string(MSC_FIXTURE_DIR) + "/" + name; }
std::string golden_path(const std::string& name) { return std::string(MSC_GOLDEN_DIR) + "/" + name; }

Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index k = 0;
  for (double x : values) v[k++] = x;
  return v;
}

}  // namespace msc::testing
