#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "wedge32/matrix.hpp"

namespace wedge32 {

/// Interning pool of tower scalars with memoized ring operations on ids.
/// Matrices of an enumerated group store pool ids instead of values, so a
/// group of 155 520 dense matrices costs megabytes, not gigabytes. Ids are
/// only meaningful within one pool; equal ids <=> equal values.
class ScalarPool {
  public:
    explicit ScalarPool(const FieldDescriptor* d);

    const FieldDescriptor* descriptor() const { return desc_; }
    std::uint32_t intern(const TowerElement& v);
    std::uint32_t intern_moved(TowerElement&& v, const std::string& key);
    std::optional<std::uint32_t> find(const std::string& key) const;
    const TowerElement& at(std::uint32_t id) const { return elems_[id]; }
    std::size_t size() const { return elems_.size(); }

    std::uint32_t zero_id() const { return 0; }
    std::uint32_t one_id() const { return 1; }
    std::uint32_t minus_one_id() const { return 2; }

    std::uint32_t mul(std::uint32_t a, std::uint32_t b);
    std::uint32_t add(std::uint32_t a, std::uint32_t b);
    std::uint32_t neg(std::uint32_t a) { return mul(minus_one_id(), a); }

    /// Dot product of two id sequences. Small integer values take a raw
    /// int64 path; everything else goes through the memoized exact ops.
    std::uint32_t dot(const std::uint32_t* a, std::size_t astride, const std::uint32_t* b,
                      std::size_t bstride, std::size_t n);

    /// out = a * b for packed row-major n x n matrices of ids.
    void matmul_packed(unsigned n, const std::uint32_t* a, const std::uint32_t* b,
                       std::uint32_t* out);

  private:
    std::uint32_t intern_key(TowerElement v, const std::string& key);
    void note_small(std::uint32_t id, const TowerElement& v);

    const FieldDescriptor* desc_;
    std::deque<TowerElement> elems_;
    std::unordered_map<std::string, std::uint32_t> index_;

    // small rational-integer fast path
    struct Small {
        std::int64_t v = 0;
        bool valid = false;
    };
    std::vector<Small> small_;
    std::unordered_map<std::int64_t, std::uint32_t> small_index_;

    std::unordered_map<std::uint64_t, std::uint32_t> mul_memo_;
    std::unordered_map<std::uint64_t, std::uint32_t> add_memo_;
    static constexpr std::size_t kMemoCap = 8'000'000;
};

struct ConjClassTable {
    std::vector<std::uint32_t> representatives;  // element positions
    std::vector<std::size_t> sizes;
    std::vector<std::uint32_t> class_of;  // position -> class index

    std::size_t class_count() const { return representatives.size(); }
};

/// An enumerated finite matrix group: elements in discovery order, the
/// identity at position 0, an injective canonical-key index, and the
/// determinant of every element (tracked homomorphically during closure).
class FiniteMatrixGroup {
  public:
    FiniteMatrixGroup() = default;  // empty shell; fill via a factory

    /// Breadth-first product closure with canonical-key deduplication.
    /// Deterministic: elements appear in (frontier x generators) discovery
    /// order regardless of the worker count. Aborts with
    /// RunawayClosureError when the element count exceeds order_bound.
    static FiniteMatrixGroup closure(const std::vector<MatrixK>& generators,
                                     std::size_t order_bound, unsigned jobs = 1);

    /// Wraps an externally produced, already closed element set (an image
    /// of a homomorphism). Deduplicates; requires the identity.
    static FiniteMatrixGroup from_elements(std::shared_ptr<ScalarPool> pool, unsigned dim,
                                           std::vector<std::vector<std::uint32_t>> packed);

    /// Cache deserialization: rebuilds the index, requires the identity at
    /// position 0 and re-runs a deterministic closure spot check.
    static FiniteMatrixGroup restore(std::shared_ptr<ScalarPool> pool, unsigned dim,
                                     std::vector<std::uint32_t> flat,
                                     std::vector<std::uint32_t> det_ids,
                                     std::vector<std::uint32_t> gens);

    unsigned dim() const { return dim_; }
    std::size_t size() const { return size_; }
    const std::shared_ptr<ScalarPool>& pool() const { return pool_; }

    MatrixK element(std::size_t pos) const;
    std::span<const std::uint32_t> packed(std::size_t pos) const;
    std::optional<std::size_t> find(const MatrixK& m) const;
    std::optional<std::size_t> find_packed(std::span<const std::uint32_t> ids) const;
    bool contains(const MatrixK& m) const { return find(m).has_value(); }

    const std::vector<std::uint32_t>& generator_positions() const { return gens_; }
    TowerElement determinant(std::size_t pos) const;

    /// position of the product (must exist: the group is closed)
    std::size_t multiply(std::size_t a, std::size_t b) const;
    std::size_t inverse_position(std::size_t a) const;  // by cycle walking
    unsigned element_order(std::size_t pos) const;

    FiniteMatrixGroup subgroup_by_det(const std::vector<TowerElement>& allowed) const;
    FiniteMatrixGroup centralizer(std::size_t pos) const;
    FiniteMatrixGroup center() const;

    ConjClassTable conjugacy_partition() const;
    bool are_conjugate(std::size_t g, std::size_t h) const;
    std::map<unsigned, std::size_t> order_spectrum() const;

    FiniteMatrixGroup normal_closure(std::size_t pos) const;
    /// True iff the normal closure of every nontrivial class representative
    /// is the whole group.
    bool simplicity_certificate() const;

    /// Deterministic greedy generating subset (used by groups created as
    /// subsets, whose defining generators are unknown).
    std::vector<std::uint32_t> find_generating_subset() const;

    /// Characteristic polynomial through traces of packed powers and the
    /// Newton identities; far cheaper than materialized elimination when
    /// scanning a whole group.
    CharPoly element_char_poly(std::size_t pos) const;

  private:
    void append_packed(std::span<const std::uint32_t> ids, std::uint32_t det_id);
    std::string packed_key(std::span<const std::uint32_t> ids) const;
    FiniteMatrixGroup subset_group(const std::vector<std::uint32_t>& positions) const;
    std::vector<std::uint32_t> ensure_generators() const;
    /// positions of <seeds> inside this group; stops early at stop_size
    std::vector<std::uint32_t> subgroup_closure(std::vector<std::uint32_t> seeds,
                                                std::size_t stop_size) const;

    unsigned dim_ = 0;
    std::size_t size_ = 0;
    std::shared_ptr<ScalarPool> pool_;
    std::vector<std::uint32_t> flat_;  // size_ * dim_ * dim_
    std::unordered_map<std::string, std::uint32_t> index_;
    std::vector<std::uint32_t> det_ids_;
    std::vector<std::uint32_t> gens_;
    mutable std::vector<std::uint32_t> cached_gens_;  // for subset groups
};

}  // namespace wedge32
