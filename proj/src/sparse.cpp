#include "memestream/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "memestream/kernels.hpp"

namespace memestream {

void SparseVector::add(std::uint32_t id, double w) {
    if (w == 0.0) return;
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    const auto pos = static_cast<std::size_t>(it - ids_.begin());
    if (it != ids_.end() && *it == id) {
        weights_[pos] += w;
        if (weights_[pos] == 0.0) {
            ids_.erase(it);
            weights_.erase(weights_.begin() + static_cast<std::ptrdiff_t>(pos));
        }
    } else {
        ids_.insert(it, id);
        weights_.insert(weights_.begin() + static_cast<std::ptrdiff_t>(pos), w);
    }
}

void SparseVector::add_all(const SparseVector& other) {
    for (std::size_t i = 0; i < other.ids_.size(); ++i) add(other.ids_[i], other.weights_[i]);
}

void SparseVector::clear() {
    ids_.clear();
    weights_.clear();
}

double SparseVector::dot(const SparseVector& other) const {
    return kernels::active().sparse_dot(ids_.data(), weights_.data(), ids_.size(),
                                        other.ids_.data(), other.weights_.data(), other.ids_.size());
}

double SparseVector::norm2() const { return kernels::active().sum_squares(weights_.data(), weights_.size()); }

double SparseVector::norm() const { return std::sqrt(norm2()); }

double SparseVector::cosine(const SparseVector& a, const SparseVector& b) {
    if (a.empty() || b.empty()) return 0.0;
    const double denom = a.norm() * b.norm();
    if (denom == 0.0) return 0.0;
    return a.dot(b) / denom;
}

double SparseVector::weight_of(std::uint32_t id) const {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it == ids_.end() || *it != id) return 0.0;
    return weights_[static_cast<std::size_t>(it - ids_.begin())];
}

double SparseVector::weight_sum() const { return std::accumulate(weights_.begin(), weights_.end(), 0.0); }

bool IdSet::insert(std::uint32_t id) {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it != ids_.end() && *it == id) return false;
    ids_.insert(it, id);
    return true;
}

void IdSet::insert_all(const IdSet& other) {
    for (std::uint32_t id : other.ids_) insert(id);
}

void IdSet::clear() { ids_.clear(); }

bool IdSet::contains(std::uint32_t id) const {
    return std::binary_search(ids_.begin(), ids_.end(), id);
}

std::size_t IdSet::intersect_count(const IdSet& other) const {
    return kernels::active().intersect_count(ids_.data(), ids_.size(), other.ids_.data(), other.ids_.size());
}

double IdSet::cosine(const IdSet& a, const IdSet& b) {
    if (a.empty() || b.empty()) return 0.0;
    const auto common = a.intersect_count(b);
    return static_cast<double>(common) /
           std::sqrt(static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

double IdSet::jaccard(const IdSet& a, const IdSet& b) {
    if (a.empty() || b.empty()) return 0.0;
    const auto common = a.intersect_count(b);
    const auto uni = a.size() + b.size() - common;
    return static_cast<double>(common) / static_cast<double>(uni);
}

}  // namespace memestream
