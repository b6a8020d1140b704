#pragma once

// Shared test data: the four-alternative fixture datasets, their matrices, and Luce data.

#include <string>
#include <vector>

#include "msc/core.hpp"

namespace msc::testing {

inline constexpr Index I = 0, J = 1, K = 2, L = 3;

Universe ijkl();
Menu grand();  ///< {i,j,k,l}

/// Binary shares p(a|{a,b}) for i,j,k,l plus `grand_menu` on {i,j,k,l}, as decimal literals.
ChoiceDataset four_way(const std::vector<std::string>& grand_menu);
ChoiceDataset example1();  ///< (0.2, 0.2, 0.4, 0.2)
ChoiceDataset example2();  ///< (0.25, 0.28, 0.2, 0.27)
ChoiceDataset example3();  ///< (0.24, 0.3, 0.22, 0.24)

Matrix q2();
Matrix q3();
Matrix q4();

/// Grand block (q, pi) plus binary blocks q_ab = 0.5 p(b|{a,b}) from the binary shares.
MscModel four_way_model(const Matrix& q, const Vector& pi);

/// Luce data p(a|M) = u_a / sum u over every menu with two or more members.
ChoiceDataset luce_data(const std::vector<double>& utilities);

/// Every subset of {0..n-1} with at least `min_size` members.
std::vector<Menu> all_menus(std::size_t n, std::size_t min_size = 2);

std::string fixture_path(const std::string& name);
std::string golden_path(const std::string& name);

Vector vec(std::initializer_list<double> values);

}  // namespace msc::testing
