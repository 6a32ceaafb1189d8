#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace stdiff::group {

using Residues = std::vector<std::int64_t>;

/// Z/q_1 + ... + Z/q_m with componentwise arithmetic.
class FiniteAbelianGroup {
 public:
  explicit FiniteAbelianGroup(std::vector<std::int64_t> orders);
  /// Parses "Z2", "Z3", "Z2xZ2" or "2,2".
  static FiniteAbelianGroup parse(const std::string& spec);

  const std::vector<std::int64_t>& orders() const { return orders_; }
  std::size_t rank() const { return orders_.size(); }
  std::uint64_t size() const { return size_; }

  Residues element(std::uint64_t index) const;
  std::uint64_t index_of(const Residues& x) const;
  Residues add(const Residues& x, const Residues& y) const;
  Residues sub(const Residues& x, const Residues& y) const;
  Residues scale(std::int64_t k, const Residues& x) const;
  Residues zero() const { return Residues(orders_.size(), 0); }

  std::string to_string() const;

 private:
  std::vector<std::int64_t> orders_;
  std::uint64_t size_ = 1;
};

/// Group endomorphism stored by the images of the standard generators e_j.
class FiniteEndomorphism {
 public:
  FiniteEndomorphism() = default;
  explicit FiniteEndomorphism(std::vector<Residues> images) : images_(std::move(images)) {}

  Residues operator()(const FiniteAbelianGroup& g, const Residues& x) const;
  /// (this o rhs)(x) = this(rhs(x)).
  FiniteEndomorphism compose(const FiniteAbelianGroup& g, const FiniteEndomorphism& rhs) const;
  FiniteEndomorphism minus(const FiniteAbelianGroup& g, const FiniteEndomorphism& rhs) const;
  /// Surjectivity by image enumeration.
  bool is_surjective(const FiniteAbelianGroup& g) const;

  const std::vector<Residues>& images() const { return images_; }
  bool operator==(const FiniteEndomorphism&) const = default;
  auto operator<=>(const FiniteEndomorphism&) const = default;

 private:
  std::vector<Residues> images_;
};

/// Number of endomorphisms: prod_j #{h : q_j h = 0}.
std::uint64_t count_endomorphisms(const FiniteAbelianGroup& g);

/// All of End(A); throws search_budget if the count exceeds `cap`.
std::vector<FiniteEndomorphism> enumerate_endomorphisms(const FiniteAbelianGroup& g, std::uint64_t cap);

}  // namespace stdiff::group
