#pragma once

#include <cstdint>
#include <vector>

namespace memestream {

// Sparse vector keyed by interned u32 ids, kept as parallel sorted arrays so
// the kernels layer can run over contiguous memory. No zero-weight entries
// are stored. In this pipeline all weights are integral counts, which keeps
// incremental sums exactly equal to from-scratch rebuilds.
class SparseVector {
public:
    void add(std::uint32_t id, double w);
    void add_all(const SparseVector& other);
    void clear();

    double dot(const SparseVector& other) const;
    double norm2() const;
    double norm() const;

    // Cosine similarity with the zero-norm convention: 0 when either side is empty.
    static double cosine(const SparseVector& a, const SparseVector& b);

    bool empty() const { return ids_.empty(); }
    std::size_t size() const { return ids_.size(); }
    const std::vector<std::uint32_t>& ids() const { return ids_; }
    const std::vector<double>& weights() const { return weights_; }
    double weight_of(std::uint32_t id) const;  // 0 when absent
    double weight_sum() const;

    bool operator==(const SparseVector&) const = default;

private:
    std::vector<std::uint32_t> ids_;
    std::vector<double> weights_;
};

// Sorted-unique set of interned u32 ids.
class IdSet {
public:
    bool insert(std::uint32_t id);  // false when already present
    void insert_all(const IdSet& other);
    void clear();

    bool contains(std::uint32_t id) const;
    std::size_t intersect_count(const IdSet& other) const;

    // |A ∩ B| / sqrt(|A| |B|), 0 when either side is empty.
    static double cosine(const IdSet& a, const IdSet& b);
    // |A ∩ B| / |A ∪ B|, 0 when either side is empty.
    static double jaccard(const IdSet& a, const IdSet& b);

    bool empty() const { return ids_.empty(); }
    std::size_t size() const { return ids_.size(); }
    const std::vector<std::uint32_t>& ids() const { return ids_; }

    bool operator==(const IdSet&) const = default;

private:
    std::vector<std::uint32_t> ids_;
};

}  // namespace memestream
