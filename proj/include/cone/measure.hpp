#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <string>
#include <vector>

#include "cone/errors.hpp"
#include "cone/geometry.hpp"

namespace cone {

/// One atom s * delta_x of a discrete measure: a strictly positive weight
/// attached to a position.
struct WeightedAtom {
  double weight = 0.0;
  Point position;

  friend bool operator==(const WeightedAtom&, const WeightedAtom&) = default;
};

/// Largest support size for which full submeasure enumeration (2^n
/// subsets) is allowed.
inline constexpr std::size_t kEnumerationCap = 20;

/// A non-negative discrete measure with finitely many atoms at pairwise
/// distinct positions: eta = sum_i s_i delta_{x_i}. The empty atom list
/// is the zero measure.
///
/// Atoms are stored sorted lexicographically by position, so equality,
/// hashing of serialized forms, and enumeration order are canonical.
/// Instances are immutable; every operation returns a new measure.
class FiniteDiscreteMeasure {
 public:
  /// The zero measure.
  FiniteDiscreteMeasure() = default;

  /// Validates weights (finite, > 0), positions (pairwise distinct,
  /// equal dimension) and sorts atoms by position.
  explicit FiniteDiscreteMeasure(std::vector<WeightedAtom> atoms)
      : atoms_(std::move(atoms)) {
    for (const WeightedAtom& a : atoms_) {
      if (!(a.weight > 0.0) || !std::isfinite(a.weight))
        throw NonpositiveWeight("atom weight must be finite and > 0");
    }
    sort_atoms();
    for (std::size_t i = 0; i + 1 < atoms_.size(); ++i) {
      if (atoms_[i].position.dim() != atoms_[i + 1].position.dim())
        throw InvalidArgument("atom positions have mixed dimensions");
      if (atoms_[i].position == atoms_[i + 1].position)
        throw PositionOccupied("two atoms share one position");
    }
  }

  /// Single atom s * delta_x.
  static FiniteDiscreteMeasure delta(double s, Point x) {
    return FiniteDiscreteMeasure({WeightedAtom{s, std::move(x)}});
  }

  /// Trusted constructor for atom lists already sorted, distinct and
  /// validated (used by enumeration and samplers on hot paths).
  static FiniteDiscreteMeasure from_sorted_atoms(std::vector<WeightedAtom> atoms) {
    FiniteDiscreteMeasure eta;
    eta.atoms_ = std::move(atoms);
    return eta;
  }

  const std::vector<WeightedAtom>& atoms() const { return atoms_; }

  /// Number of atoms |tau(eta)|.
  std::size_t support_size() const { return atoms_.size(); }

  bool is_zero() const { return atoms_.empty(); }

  bool has_atom_at(const Point& x) const { return find(x) != npos; }

  /// Weight s_x of the atom at x; throws NoAtomAt if none.
  double weight_at(const Point& x) const {
    const std::size_t i = find(x);
    if (i == npos) throw NoAtomAt("no atom at the requested position");
    return atoms_[i].weight;
  }

  /// Pairing <eta, f> = sum_x s_x f(x) for any f evaluable at points.
  /// Atoms are summed in canonical (sorted) order.
  template <class F>
  double pairing(F&& f) const {
    double acc = 0.0;
    for (const WeightedAtom& a : atoms_) acc += a.weight * f(a.position);
    return acc;
  }

  /// eta(B) = total weight carried by positions inside the box.
  double mass(const Box& region) const {
    double acc = 0.0;
    for (const WeightedAtom& a : atoms_)
      if (region.contains(a.position)) acc += a.weight;
    return acc;
  }

  double total_mass() const {
    double acc = 0.0;
    for (const WeightedAtom& a : atoms_) acc += a.weight;
    return acc;
  }

  /// eta + s delta_x; the position must be free.
  FiniteDiscreteMeasure add_atom(double s, Point x) const {
    if (!(s > 0.0) || !std::isfinite(s))
      throw NonpositiveWeight("atom weight must be finite and > 0");
    if (has_atom_at(x)) throw PositionOccupied("position already carries an atom");
    std::vector<WeightedAtom> out = atoms_;
    out.push_back(WeightedAtom{s, std::move(x)});
    FiniteDiscreteMeasure eta;
    eta.atoms_ = std::move(out);
    eta.sort_atoms();
    return eta;
  }

  /// eta - s_x delta_x; the atom must exist.
  FiniteDiscreteMeasure remove_atom(const Point& x) const {
    const std::size_t i = find(x);
    if (i == npos) throw NoAtomAt("no atom at the requested position");
    std::vector<WeightedAtom> out = atoms_;
    out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
    return from_sorted_atoms(std::move(out));
  }

  /// xi <= eta in the submeasure order of the cone: every atom of xi is
  /// an atom of eta with the identical weight.
  bool is_submeasure_of(const FiniteDiscreteMeasure& eta) const {
    return std::includes(eta.atoms_.begin(), eta.atoms_.end(), atoms_.begin(),
                         atoms_.end(), atom_less);
  }

  /// eta - xi for a submeasure xi (atom-wise set difference).
  FiniteDiscreteMeasure subtract(const FiniteDiscreteMeasure& xi) const {
    if (!xi.is_submeasure_of(*this))
      throw NotSubmeasure("subtrahend is not a submeasure");
    std::vector<WeightedAtom> out;
    out.reserve(atoms_.size() - xi.atoms_.size());
    std::set_difference(atoms_.begin(), atoms_.end(), xi.atoms_.begin(),
                        xi.atoms_.end(), std::back_inserter(out), atom_less);
    return from_sorted_atoms(std::move(out));
  }

  /// Sum of two measures with disjoint supports.
  FiniteDiscreteMeasure disjoint_sum(const FiniteDiscreteMeasure& other) const {
    std::vector<WeightedAtom> out;
    out.reserve(atoms_.size() + other.atoms_.size());
    std::merge(atoms_.begin(), atoms_.end(), other.atoms_.begin(),
               other.atoms_.end(), std::back_inserter(out), atom_less);
    for (std::size_t i = 0; i + 1 < out.size(); ++i) {
      if (out[i].position == out[i + 1].position)
        throw OverlappingSupports("summands share a support point");
    }
    return from_sorted_atoms(std::move(out));
  }

  /// Window projection p_{Lambda,a,b}(eta): keeps exactly the atoms with
  /// position in Lambda and weight in [a, b].
  FiniteDiscreteMeasure project(const Window& w) const {
    std::vector<WeightedAtom> out;
    for (const WeightedAtom& a : atoms_)
      if (w.admits(a.weight, a.position)) out.push_back(a);
    return from_sorted_atoms(std::move(out));
  }

  /// Keeps the atoms whose position lies in the box, regardless of weight.
  FiniteDiscreteMeasure restrict_positions(const Box& region) const {
    std::vector<WeightedAtom> out;
    for (const WeightedAtom& a : atoms_)
      if (region.contains(a.position)) out.push_back(a);
    return from_sorted_atoms(std::move(out));
  }

  friend bool operator==(const FiniteDiscreteMeasure&,
                         const FiniteDiscreteMeasure&) = default;

  friend std::strong_ordering operator<=>(const FiniteDiscreteMeasure& a,
                                          const FiniteDiscreteMeasure& b) {
    const std::size_t n = std::min(a.atoms_.size(), b.atoms_.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (auto c = a.atoms_[i].position <=> b.atoms_[i].position; c != 0) return c;
      if (a.atoms_[i].weight < b.atoms_[i].weight) return std::strong_ordering::less;
      if (a.atoms_[i].weight > b.atoms_[i].weight)
        return std::strong_ordering::greater;
    }
    if (a.atoms_.size() != b.atoms_.size())
      return a.atoms_.size() < b.atoms_.size() ? std::strong_ordering::less
                                               : std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  static bool atom_less(const WeightedAtom& a, const WeightedAtom& b) {
    return a.position < b.position;
  }

  void sort_atoms() { std::sort(atoms_.begin(), atoms_.end(), atom_less); }

  std::size_t find(const Point& x) const {
    for (std::size_t i = 0; i < atoms_.size(); ++i)
      if (atoms_[i].position == x) return i;
    return npos;
  }

  std::vector<WeightedAtom> atoms_;
};

/// A finite pinpointing configuration on the marked space
/// (0, inf) x X: a point set with pairwise distinct positions, the image
/// of a finite discrete measure under the atom map.
class MarkedConfiguration {
 public:
  MarkedConfiguration() = default;

  explicit MarkedConfiguration(std::vector<WeightedAtom> points)
      : points_(std::move(points)) {
    for (const WeightedAtom& p : points_) {
      if (!(p.weight > 0.0) || !std::isfinite(p.weight))
        throw NonpositiveWeight("mark must be finite and > 0");
    }
    std::sort(points_.begin(), points_.end(),
              [](const WeightedAtom& a, const WeightedAtom& b) {
                return a.position < b.position;
              });
    for (std::size_t i = 0; i + 1 < points_.size(); ++i) {
      if (points_[i].position == points_[i + 1].position)
        throw NotPinpointing("two points share one position");
    }
  }

  const std::vector<WeightedAtom>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }

  bool contains(double s, const Point& x) const {
    for (const WeightedAtom& p : points_)
      if (p.position == x) return p.weight == s;
    return false;
  }

  /// gamma + delta_{(s,x)}. Throws DuplicatePoint if (s, x) is already a
  /// point and NotPinpointing if x carries a different mark.
  MarkedConfiguration add_point(double s, Point x) const {
    for (const WeightedAtom& p : points_) {
      if (p.position == x) {
        if (p.weight == s) throw DuplicatePoint("point already present");
        throw NotPinpointing("position already carries a different mark");
      }
    }
    std::vector<WeightedAtom> out = points_;
    out.push_back(WeightedAtom{s, std::move(x)});
    return MarkedConfiguration(std::move(out));
  }

  friend bool operator==(const MarkedConfiguration&,
                         const MarkedConfiguration&) = default;

 private:
  std::vector<WeightedAtom> points_;
};

/// The atom map R^{-1}: eta = sum s_i delta_{x_i} to the configuration
/// {(s_i, x_i)} on (0, inf) x X.
inline MarkedConfiguration to_configuration(const FiniteDiscreteMeasure& eta) {
  return MarkedConfiguration(eta.atoms());
}

/// The measure map R: {(s_i, x_i)} to sum s_i delta_{x_i}. Total on
/// pinpointing configurations, which the type guarantees.
inline FiniteDiscreteMeasure from_configuration(const MarkedConfiguration& gamma) {
  return FiniteDiscreteMeasure::from_sorted_atoms(gamma.points());
}

/// Builds the measure sum of arbitrary weighted atoms: coincident
/// positions merge by adding their weights, as measure addition demands.
inline FiniteDiscreteMeasure superpose(std::vector<WeightedAtom> atoms) {
  std::sort(atoms.begin(), atoms.end(),
            [](const WeightedAtom& a, const WeightedAtom& b) {
              return a.position < b.position;
            });
  std::vector<WeightedAtom> merged;
  for (WeightedAtom& a : atoms) {
    if (!(a.weight > 0.0) || !std::isfinite(a.weight))
      throw NonpositiveWeight("atom weight must be finite and > 0");
    if (!merged.empty() && merged.back().position == a.position)
      merged.back().weight += a.weight;
    else
      merged.push_back(std::move(a));
  }
  return FiniteDiscreteMeasure::from_sorted_atoms(std::move(merged));
}

/// Lazy range over all 2^n submeasures of eta (atom subsets). Bit i of
/// the enumeration mask selects atom i of the sorted atom list, so the
/// sequence starts with the zero measure and ends with eta itself.
class SubmeasureRange {
 public:
  class iterator {
   public:
    using value_type = FiniteDiscreteMeasure;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    iterator(const std::vector<WeightedAtom>* atoms, std::uint64_t mask)
        : atoms_(atoms), mask_(mask) {}

    FiniteDiscreteMeasure operator*() const {
      std::vector<WeightedAtom> sub;
      sub.reserve(static_cast<std::size_t>(std::popcount(mask_)));
      for (std::size_t i = 0; i < atoms_->size(); ++i)
        if (mask_ & (std::uint64_t{1} << i)) sub.push_back((*atoms_)[i]);
      return FiniteDiscreteMeasure::from_sorted_atoms(std::move(sub));
    }

    iterator& operator++() {
      ++mask_;
      return *this;
    }
    iterator operator++(int) {
      iterator old = *this;
      ++mask_;
      return old;
    }

    friend bool operator==(const iterator& a, const iterator& b) {
      return a.mask_ == b.mask_;
    }

   private:
    const std::vector<WeightedAtom>* atoms_ = nullptr;
    std::uint64_t mask_ = 0;
  };

  explicit SubmeasureRange(const FiniteDiscreteMeasure& eta) : eta_(&eta) {}

  iterator begin() const { return iterator(&eta_->atoms(), 0); }
  iterator end() const {
    return iterator(&eta_->atoms(), std::uint64_t{1} << eta_->support_size());
  }
  std::uint64_t size() const { return std::uint64_t{1} << eta_->support_size(); }

 private:
  const FiniteDiscreteMeasure* eta_;
};

/// All submeasures xi of eta, yielded lazily, starting with 0 and
/// ending with eta. Throws TooManyAtoms when the support exceeds the cap.
/// The referenced eta must outlive the range.
inline SubmeasureRange enumerate_submeasures(const FiniteDiscreteMeasure& eta,
                                             std::size_t cap = kEnumerationCap) {
  if (eta.support_size() > cap)
    throw TooManyAtoms("submeasure enumeration over " +
                       std::to_string(eta.support_size()) +
                       " atoms exceeds cap " + std::to_string(cap));
  return SubmeasureRange(eta);
}

}  // namespace cone
