#include "wedge32/group.hpp"

#include <algorithm>
#include <cstring>

#include "wedge32/errors.hpp"
#include "wedge32/parallel.hpp"

namespace wedge32 {

namespace {
constexpr std::int64_t kSmallLimit = std::int64_t{1} << 28;

std::uint64_t pair_key(std::uint32_t a, std::uint32_t b) {
    if (a > b) std::swap(a, b);
    return (std::uint64_t(a) << 32) | b;
}
}  // namespace

ScalarPool::ScalarPool(const FieldDescriptor* d) : desc_(d) {
    intern(TowerElement::zero(d));
    intern(TowerElement::one(d));
    intern(TowerElement::from_int(-1, d));
}

void ScalarPool::note_small(std::uint32_t id, const TowerElement& v) {
    small_.resize(elems_.size());
    if (v.is_rational() && v.raw_denominator() == 1) {
        const Int& n = v.raw_numerators()[0];
        if (n.fits_slong_p()) {
            const long val = n.get_si();
            if (val > -kSmallLimit && val < kSmallLimit) {
                small_[id].v = val;
                small_[id].valid = true;
                small_index_.emplace(val, id);
            }
        }
    }
}

std::uint32_t ScalarPool::intern_key(TowerElement v, const std::string& key) {
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    const auto id = static_cast<std::uint32_t>(elems_.size());
    elems_.push_back(std::move(v));
    index_.emplace(key, id);
    note_small(id, elems_.back());
    return id;
}

std::uint32_t ScalarPool::intern(const TowerElement& v) {
    TowerElement p = v.descriptor() == desc_ ? v : v.promoted_to(desc_);
    std::string key = p.canonical_key();
    return intern_key(std::move(p), key);
}

std::uint32_t ScalarPool::intern_moved(TowerElement&& v, const std::string& key) {
    return intern_key(std::move(v), key);
}

std::optional<std::uint32_t> ScalarPool::find(const std::string& key) const {
    auto it = index_.find(key);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::uint32_t ScalarPool::mul(std::uint32_t a, std::uint32_t b) {
    if (a == zero_id() || b == zero_id()) return zero_id();
    if (a == one_id()) return b;
    if (b == one_id()) return a;
    const std::uint64_t k = pair_key(a, b);
    auto it = mul_memo_.find(k);
    if (it != mul_memo_.end()) return it->second;
    std::uint32_t result;
    if (small_[a].valid && small_[b].valid) {
        const std::int64_t v = small_[a].v * small_[b].v;
        auto sit = small_index_.find(v);
        result = (sit != small_index_.end())
                     ? sit->second
                     : intern(TowerElement::from_rational(Rational(Int(v)), desc_));
    } else {
        result = intern(elems_[a] * elems_[b]);
    }
    if (mul_memo_.size() < kMemoCap) mul_memo_.emplace(k, result);
    return result;
}

std::uint32_t ScalarPool::add(std::uint32_t a, std::uint32_t b) {
    if (a == zero_id()) return b;
    if (b == zero_id()) return a;
    const std::uint64_t k = pair_key(a, b);
    auto it = add_memo_.find(k);
    if (it != add_memo_.end()) return it->second;
    std::uint32_t result;
    if (small_[a].valid && small_[b].valid) {
        const std::int64_t v = small_[a].v + small_[b].v;
        auto sit = small_index_.find(v);
        result = (sit != small_index_.end())
                     ? sit->second
                     : intern(TowerElement::from_rational(Rational(Int(v)), desc_));
    } else {
        result = intern(elems_[a] + elems_[b]);
    }
    if (add_memo_.size() < kMemoCap) add_memo_.emplace(k, result);
    return result;
}

std::uint32_t ScalarPool::dot(const std::uint32_t* a, std::size_t astride, const std::uint32_t* b,
                              std::size_t bstride, std::size_t n) {
    // raw int64 path when every contributing operand is a small integer
    bool small_ok = true;
    std::int64_t acc = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const std::uint32_t x = a[k * astride], y = b[k * bstride];
        if (x == zero_id() || y == zero_id()) continue;
        if (!small_[x].valid || !small_[y].valid) {
            small_ok = false;
            break;
        }
        acc += small_[x].v * small_[y].v;
    }
    if (small_ok) {
        auto sit = small_index_.find(acc);
        if (sit != small_index_.end()) return sit->second;
        return intern(TowerElement::from_rational(Rational(Int(acc)), desc_));
    }
    // exact path: raw accumulation over a common denominator; only the
    // final value touches the pool (partial sums would flood it)
    TowerElement sum = TowerElement::zero(desc_);
    Int den(1);
    bool any = false;
    for (std::size_t k = 0; k < n; ++k) {
        const std::uint32_t xi = a[k * astride], yi = b[k * bstride];
        if (xi == zero_id() || yi == zero_id()) continue;
        const TowerElement& x = elems_[xi];
        const TowerElement& y = elems_[yi];
        Int term_den = x.raw_denominator() * y.raw_denominator();
        if (!any) {
            sum.accumulate_product(x, y);
            den = std::move(term_den);
            any = true;
        } else if (term_den == den) {
            sum.accumulate_product(x, y);
        } else {
            Int g = gcd(den, term_den);
            Int lf = term_den / g;
            Int rf = den / g;
            TowerElement scaled = TowerElement::zero(desc_);
            scaled.accumulate_product(x, y);
            sum = sum.mul_int_raw(lf);
            sum.add_raw(scaled.mul_int_raw(rf));
            den *= lf;
        }
    }
    if (!any) return zero_id();
    return intern(sum.with_denominator(std::move(den)));
}

void ScalarPool::matmul_packed(unsigned n, const std::uint32_t* a, const std::uint32_t* b,
                               std::uint32_t* out) {
    for (unsigned r = 0; r < n; ++r)
        for (unsigned c = 0; c < n; ++c) out[r * n + c] = dot(a + r * n, 1, b + c, n, n);
}

// ---------------------------------------------------------------------------

std::string FiniteMatrixGroup::packed_key(std::span<const std::uint32_t> ids) const {
    std::string key(ids.size() * sizeof(std::uint32_t), '\0');
    std::memcpy(key.data(), ids.data(), key.size());
    return key;
}

void FiniteMatrixGroup::append_packed(std::span<const std::uint32_t> ids, std::uint32_t det_id) {
    index_.emplace(packed_key(ids), static_cast<std::uint32_t>(size_));
    flat_.insert(flat_.end(), ids.begin(), ids.end());
    det_ids_.push_back(det_id);
    ++size_;
}

std::span<const std::uint32_t> FiniteMatrixGroup::packed(std::size_t pos) const {
    const std::size_t nn = std::size_t(dim_) * dim_;
    return {flat_.data() + pos * nn, nn};
}

MatrixK FiniteMatrixGroup::element(std::size_t pos) const {
    MatrixK m(dim_, dim_, pool_->descriptor());
    auto ids = packed(pos);
    for (unsigned r = 0; r < dim_; ++r)
        for (unsigned c = 0; c < dim_; ++c) m.at(r, c) = pool_->at(ids[r * dim_ + c]);
    return m;
}

std::optional<std::size_t> FiniteMatrixGroup::find(const MatrixK& m) const {
    if (m.rows() != dim_ || m.cols() != dim_) return std::nullopt;
    std::vector<std::uint32_t> ids(std::size_t(dim_) * dim_);
    const FieldDescriptor* d = pool_->descriptor();
    for (unsigned r = 0; r < dim_; ++r)
        for (unsigned c = 0; c < dim_; ++c) {
            const TowerElement& x = m.at(r, c);
            if (!x.lies_in(d) && !d->contains(x.descriptor())) return std::nullopt;
            TowerElement v = x.descriptor() == d ? x
                             : d->contains(x.descriptor()) ? x.promoted_to(d)
                                                           : x.restricted_to(d);
            auto id = pool_->find(v.canonical_key());
            if (!id) return std::nullopt;
            ids[r * dim_ + c] = *id;
        }
    return find_packed(ids);
}

std::optional<std::size_t> FiniteMatrixGroup::find_packed(
    std::span<const std::uint32_t> ids) const {
    auto it = index_.find(packed_key(ids));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

TowerElement FiniteMatrixGroup::determinant(std::size_t pos) const {
    if (det_ids_[pos] != UINT32_MAX) return pool_->at(det_ids_[pos]);
    return det(element(pos));
}

FiniteMatrixGroup FiniteMatrixGroup::closure(const std::vector<MatrixK>& generators,
                                             std::size_t order_bound, unsigned jobs) {
    if (generators.empty()) throw DomainError("closure needs at least one generator");
    const FieldDescriptor* d = generators[0].descriptor();
    const unsigned n = generators[0].rows();
    for (const MatrixK& g : generators) {
        if (g.rows() != n || g.cols() != n) throw DomainError("generators must share one shape");
        d = FieldDescriptor::join(d, g.descriptor());
    }

    FiniteMatrixGroup grp;
    grp.dim_ = n;
    grp.pool_ = std::make_shared<ScalarPool>(d);
    ScalarPool& pool = *grp.pool_;
    const std::size_t nn = std::size_t(n) * n;

    // identity at position 0
    std::vector<std::uint32_t> ident(nn, pool.zero_id());
    for (unsigned i = 0; i < n; ++i) ident[i * n + i] = pool.one_id();
    grp.append_packed(ident, pool.one_id());

    // pack generators; determinants computed once, then tracked by product
    std::vector<std::vector<std::uint32_t>> gen_ids;
    std::vector<std::uint32_t> gen_dets;
    std::vector<std::uint32_t> frontier;
    for (const MatrixK& g0 : generators) {
        const MatrixK g = g0.promoted_to(d);
        const TowerElement dg = det(g);
        if (dg.is_zero()) throw DomainError("closure generators must be invertible");
        std::vector<std::uint32_t> ids(nn);
        for (unsigned r = 0; r < n; ++r)
            for (unsigned c = 0; c < n; ++c) ids[r * n + c] = pool.intern(g.at(r, c));
        const std::uint32_t det_id = pool.intern(dg);
        if (!grp.find_packed(ids)) {
            grp.append_packed(ids, det_id);
            frontier.push_back(static_cast<std::uint32_t>(grp.size_ - 1));
        }
        gen_ids.push_back(std::move(ids));
        gen_dets.push_back(det_id);
        grp.gens_.push_back(*grp.find_packed(gen_ids.back()));
    }

    std::vector<MatrixK> gen_mats;
    if (jobs > 1)
        for (const MatrixK& g : generators) gen_mats.push_back(g.promoted_to(d));

    while (!frontier.empty()) {
        std::vector<std::uint32_t> next;
        if (jobs <= 1) {
            std::vector<std::uint32_t> prod(nn);
            for (const std::uint32_t pos : frontier) {
                for (std::size_t gi = 0; gi < gen_ids.size(); ++gi) {
                    pool.matmul_packed(n, grp.flat_.data() + std::size_t(pos) * nn,
                                       gen_ids[gi].data(), prod.data());
                    if (grp.find_packed(prod)) continue;
                    if (grp.size_ >= order_bound)
                        throw RunawayClosureError(
                            "closure exceeded its order bound: wrong generators or broken "
                            "arithmetic");
                    grp.append_packed(prod, pool.mul(grp.det_ids_[pos], gen_dets[gi]));
                    next.push_back(static_cast<std::uint32_t>(grp.size_ - 1));
                }
            }
        } else {
            // chunked: workers compute raw products and entry keys; the merge
            // runs in task order so discovery order matches the serial path
            const std::size_t gcount = gen_ids.size();
            const std::size_t task_count = frontier.size() * gcount;
            const std::size_t chunk_size = 4096;
            struct EntryOut {
                TowerElement value;
                std::string key;
            };
            std::vector<std::vector<EntryOut>> slots(std::min(chunk_size, task_count));
            for (std::size_t chunk_begin = 0; chunk_begin < task_count;
                 chunk_begin += chunk_size) {
                const std::size_t chunk_end = std::min(chunk_begin + chunk_size, task_count);
                const std::size_t len = chunk_end - chunk_begin;
                slots.resize(len);
                parallel_blocks(len, jobs, [&](std::size_t lo, std::size_t hi) {
                    MatrixK left;
                    std::size_t left_pos = SIZE_MAX;
                    for (std::size_t t = lo; t < hi; ++t) {
                        const std::size_t task = chunk_begin + t;
                        const std::size_t pos = frontier[task / gcount];
                        const std::size_t gi = task % gcount;
                        if (pos != left_pos) {
                            left = grp.element(pos);
                            left_pos = pos;
                        }
                        const MatrixK prod = matmul(left, gen_mats[gi]);
                        auto& out = slots[t];
                        out.clear();
                        out.reserve(nn);
                        for (unsigned r = 0; r < n; ++r)
                            for (unsigned c = 0; c < n; ++c) {
                                EntryOut e{prod.at(r, c), prod.at(r, c).canonical_key()};
                                out.push_back(std::move(e));
                            }
                    }
                });
                std::vector<std::uint32_t> prod(nn);
                for (std::size_t t = 0; t < len; ++t) {
                    const std::size_t task = chunk_begin + t;
                    const std::size_t pos = frontier[task / gcount];
                    const std::size_t gi = task % gcount;
                    for (std::size_t e = 0; e < nn; ++e)
                        prod[e] = pool.intern_moved(std::move(slots[t][e].value),
                                                    slots[t][e].key);
                    if (grp.find_packed(prod)) continue;
                    if (grp.size_ >= order_bound)
                        throw RunawayClosureError(
                            "closure exceeded its order bound: wrong generators or broken "
                            "arithmetic");
                    grp.append_packed(prod, pool.mul(grp.det_ids_[pos], gen_dets[gi]));
                    next.push_back(static_cast<std::uint32_t>(grp.size_ - 1));
                }
            }
        }
        frontier = std::move(next);
    }
    return grp;
}

FiniteMatrixGroup FiniteMatrixGroup::from_elements(
    std::shared_ptr<ScalarPool> pool, unsigned dim,
    std::vector<std::vector<std::uint32_t>> packed) {
    FiniteMatrixGroup grp;
    grp.dim_ = dim;
    grp.pool_ = std::move(pool);
    const std::size_t nn = std::size_t(dim) * dim;
    std::vector<std::uint32_t> ident(nn, grp.pool_->zero_id());
    for (unsigned i = 0; i < dim; ++i) ident[i * dim + i] = grp.pool_->one_id();
    grp.append_packed(ident, grp.pool_->one_id());
    for (auto& ids : packed) {
        if (ids.size() != nn) throw DomainError("from_elements: wrong packed size");
        if (!grp.find_packed(ids)) grp.append_packed(ids, grp.pool_->zero_id());
    }
    // determinants unknown here; recomputed on demand
    grp.det_ids_.assign(grp.size_, UINT32_MAX);
    grp.det_ids_[0] = grp.pool_->one_id();
    return grp;
}

FiniteMatrixGroup FiniteMatrixGroup::restore(std::shared_ptr<ScalarPool> pool, unsigned dim,
                                             std::vector<std::uint32_t> flat,
                                             std::vector<std::uint32_t> det_ids,
                                             std::vector<std::uint32_t> gens) {
    FiniteMatrixGroup grp;
    grp.dim_ = dim;
    grp.pool_ = std::move(pool);
    const std::size_t nn = std::size_t(dim) * dim;
    if (flat.size() % nn != 0 || det_ids.size() != flat.size() / nn)
        throw CacheError("group cache has inconsistent sizes");
    const std::size_t count = flat.size() / nn;
    for (std::size_t pos = 0; pos < count; ++pos)
        grp.append_packed({flat.data() + pos * nn, nn}, det_ids[pos]);
    grp.gens_ = std::move(gens);
    for (const std::uint32_t g : grp.gens_)
        if (g >= grp.size_) throw CacheError("group cache generator out of range");
    if (grp.size_ == 0 || !grp.element(0).is_identity())
        throw CacheError("group cache does not start with the identity");
    // deterministic spot check of closedness
    const std::size_t sample = std::min<std::size_t>(grp.size_, 64);
    for (std::size_t i = 0; i < sample; ++i) {
        const std::size_t a = (i * 2654435761u) % grp.size_;
        const std::size_t b = (i * 40503u + 3) % grp.size_;
        grp.multiply(a, b);  // throws if the product is missing
    }
    return grp;
}

std::size_t FiniteMatrixGroup::multiply(std::size_t a, std::size_t b) const {
    const std::size_t nn = std::size_t(dim_) * dim_;
    std::vector<std::uint32_t> prod(nn);
    pool_->matmul_packed(dim_, flat_.data() + a * nn, flat_.data() + b * nn, prod.data());
    auto pos = find_packed(prod);
    if (!pos) throw ArithmeticError("group is not closed under multiplication");
    return *pos;
}

std::size_t FiniteMatrixGroup::inverse_position(std::size_t a) const {
    if (a == 0) return 0;
    std::size_t prev = a;
    std::size_t cur = multiply(a, a);
    std::size_t guard = 0;
    while (cur != 0) {
        prev = cur;
        cur = multiply(cur, a);
        if (++guard > size_) throw ArithmeticError("element order exceeds group size");
    }
    return prev;
}

unsigned FiniteMatrixGroup::element_order(std::size_t pos) const {
    if (pos == 0) return 1;
    unsigned order = 1;
    std::size_t cur = pos;
    while (cur != 0) {
        cur = multiply(cur, pos);
        ++order;
        if (order > size_) throw ArithmeticError("element order exceeds group size");
    }
    return order;
}

FiniteMatrixGroup FiniteMatrixGroup::subset_group(
    const std::vector<std::uint32_t>& positions) const {
    FiniteMatrixGroup grp;
    grp.dim_ = dim_;
    grp.pool_ = pool_;
    const std::size_t nn = std::size_t(dim_) * dim_;
    grp.flat_.reserve(positions.size() * nn);
    bool has_identity = false;
    for (const std::uint32_t pos : positions)
        if (pos == 0) {
            has_identity = true;
            break;
        }
    if (!has_identity) throw DomainError("subgroup misses the identity");
    // identity first, then parent discovery order
    std::vector<std::uint32_t> ordered;
    ordered.reserve(positions.size());
    ordered.push_back(0);
    for (const std::uint32_t pos : positions)
        if (pos != 0) ordered.push_back(pos);
    std::sort(ordered.begin() + 1, ordered.end());
    for (const std::uint32_t pos : ordered) grp.append_packed(packed(pos), det_ids_[pos]);
    return grp;
}

FiniteMatrixGroup FiniteMatrixGroup::subgroup_by_det(
    const std::vector<TowerElement>& allowed) const {
    std::vector<std::uint32_t> allowed_ids;
    for (const TowerElement& v : allowed) allowed_ids.push_back(pool_->intern(v));
    std::vector<std::uint32_t> positions;
    for (std::size_t pos = 0; pos < size_; ++pos) {
        std::uint32_t d = det_ids_[pos];
        if (d == UINT32_MAX) d = pool_->intern(det(element(pos)));
        if (std::find(allowed_ids.begin(), allowed_ids.end(), d) != allowed_ids.end())
            positions.push_back(static_cast<std::uint32_t>(pos));
    }
    FiniteMatrixGroup sub = subset_group(positions);
    // spot-check closedness on a deterministic sample
    const std::size_t sample = std::min<std::size_t>(sub.size(), 64);
    for (std::size_t i = 0; i < sample; ++i) {
        const std::size_t a = (i * 2654435761u) % sub.size();
        const std::size_t b = (i * 40503u + 7) % sub.size();
        sub.multiply(a, b);  // throws if the product escaped
    }
    return sub;
}

FiniteMatrixGroup FiniteMatrixGroup::centralizer(std::size_t pos) const {
    std::vector<std::uint32_t> positions;
    for (std::size_t h = 0; h < size_; ++h)
        if (multiply(h, pos) == multiply(pos, h)) positions.push_back(static_cast<std::uint32_t>(h));
    return subset_group(positions);
}

FiniteMatrixGroup FiniteMatrixGroup::center() const {
    const std::vector<std::uint32_t> gens = ensure_generators();
    std::vector<std::uint32_t> positions;
    for (std::size_t h = 0; h < size_; ++h) {
        bool central = true;
        for (const std::uint32_t g : gens)
            if (multiply(h, g) != multiply(g, h)) {
                central = false;
                break;
            }
        if (central) positions.push_back(static_cast<std::uint32_t>(h));
    }
    return subset_group(positions);
}

std::vector<std::uint32_t> FiniteMatrixGroup::ensure_generators() const {
    if (!gens_.empty()) return gens_;
    return find_generating_subset();
}

std::vector<std::uint32_t> FiniteMatrixGroup::subgroup_closure(std::vector<std::uint32_t> seeds,
                                                               std::size_t stop_size) const {
    std::vector<bool> member(size_, false);
    std::vector<std::uint32_t> elements{0};
    member[0] = true;
    std::vector<std::uint32_t> frontier{0};
    std::size_t count = 1;
    for (const std::uint32_t s : seeds)
        if (!member[s]) {
            member[s] = true;
            elements.push_back(s);
            frontier.push_back(s);
            ++count;
        }
    while (!frontier.empty() && count < stop_size) {
        std::vector<std::uint32_t> next;
        for (const std::uint32_t x : frontier) {
            for (const std::uint32_t s : seeds) {
                const std::size_t p = multiply(x, s);
                if (!member[p]) {
                    member[p] = true;
                    elements.push_back(static_cast<std::uint32_t>(p));
                    next.push_back(static_cast<std::uint32_t>(p));
                    if (++count >= stop_size) break;
                }
            }
            if (count >= stop_size) break;
        }
        frontier = std::move(next);
    }
    if (count >= stop_size) {
        elements.resize(size_);
        for (std::size_t i = 0; i < size_; ++i) elements[i] = static_cast<std::uint32_t>(i);
        return elements;
    }
    std::sort(elements.begin(), elements.end());
    return elements;
}

std::vector<std::uint32_t> FiniteMatrixGroup::find_generating_subset() const {
    if (!cached_gens_.empty()) return cached_gens_;
    std::vector<std::uint32_t> gens;
    std::vector<std::uint32_t> closed{0};
    while (closed.size() < size_) {
        // first element outside the current subgroup (closed is sorted)
        std::uint32_t pick = UINT32_MAX;
        for (std::size_t pos = 1; pos < size_; ++pos) {
            if (!std::binary_search(closed.begin(), closed.end(),
                                    static_cast<std::uint32_t>(pos))) {
                pick = static_cast<std::uint32_t>(pos);
                break;
            }
        }
        if (pick == UINT32_MAX) break;
        gens.push_back(pick);
        closed = subgroup_closure(gens, size_);
    }
    cached_gens_ = gens;
    return gens;
}

ConjClassTable FiniteMatrixGroup::conjugacy_partition() const {
    const std::vector<std::uint32_t> gens = ensure_generators();
    std::vector<std::uint32_t> ginv;
    for (const std::uint32_t g : gens)
        ginv.push_back(static_cast<std::uint32_t>(inverse_position(g)));

    ConjClassTable table;
    table.class_of.assign(size_, UINT32_MAX);
    for (std::size_t pos = 0; pos < size_; ++pos) {
        if (table.class_of[pos] != UINT32_MAX) continue;
        const auto cls = static_cast<std::uint32_t>(table.representatives.size());
        table.representatives.push_back(static_cast<std::uint32_t>(pos));
        std::size_t count = 0;
        std::vector<std::uint32_t> frontier{static_cast<std::uint32_t>(pos)};
        table.class_of[pos] = cls;
        ++count;
        while (!frontier.empty()) {
            std::vector<std::uint32_t> next;
            for (const std::uint32_t x : frontier) {
                for (std::size_t gi = 0; gi < gens.size(); ++gi) {
                    const std::size_t c = multiply(multiply(gens[gi], x), ginv[gi]);
                    if (table.class_of[c] == UINT32_MAX) {
                        table.class_of[c] = cls;
                        next.push_back(static_cast<std::uint32_t>(c));
                        ++count;
                    }
                }
            }
            frontier = std::move(next);
        }
        table.sizes.push_back(count);
    }
    return table;
}

bool FiniteMatrixGroup::are_conjugate(std::size_t g, std::size_t h) const {
    if (g >= size_ || h >= size_) throw DomainError("are_conjugate: element outside the group");
    if (g == h) return true;
    const std::vector<std::uint32_t> gens = ensure_generators();
    std::vector<std::uint32_t> ginv;
    for (const std::uint32_t s : gens)
        ginv.push_back(static_cast<std::uint32_t>(inverse_position(s)));
    std::vector<bool> seen(size_, false);
    seen[g] = true;
    std::vector<std::uint32_t> frontier{static_cast<std::uint32_t>(g)};
    while (!frontier.empty()) {
        std::vector<std::uint32_t> next;
        for (const std::uint32_t x : frontier) {
            for (std::size_t gi = 0; gi < gens.size(); ++gi) {
                const std::size_t c = multiply(multiply(gens[gi], x), ginv[gi]);
                if (c == h) return true;
                if (!seen[c]) {
                    seen[c] = true;
                    next.push_back(static_cast<std::uint32_t>(c));
                }
            }
        }
        frontier = std::move(next);
    }
    return false;
}

std::map<unsigned, std::size_t> FiniteMatrixGroup::order_spectrum() const {
    const ConjClassTable table = conjugacy_partition();
    std::map<unsigned, std::size_t> spectrum;
    for (std::size_t c = 0; c < table.class_count(); ++c)
        spectrum[element_order(table.representatives[c])] += table.sizes[c];
    return spectrum;
}

FiniteMatrixGroup FiniteMatrixGroup::normal_closure(std::size_t pos) const {
    if (pos >= size_) throw DomainError("normal_closure: element outside the group");
    const std::vector<std::uint32_t> gens = ensure_generators();
    std::vector<std::uint32_t> ginv;
    for (const std::uint32_t s : gens)
        ginv.push_back(static_cast<std::uint32_t>(inverse_position(s)));

    std::vector<std::uint32_t> seeds{static_cast<std::uint32_t>(pos)};
    for (;;) {
        std::vector<std::uint32_t> closed = subgroup_closure(seeds, size_);
        if (closed.size() == size_) return subset_group(closed);
        std::vector<bool> member(size_, false);
        for (const std::uint32_t p : closed) member[p] = true;
        std::vector<std::uint32_t> missing;
        for (std::size_t gi = 0; gi < gens.size(); ++gi) {
            for (const std::uint32_t t : seeds) {
                const std::size_t c = multiply(multiply(gens[gi], t), ginv[gi]);
                if (!member[c]) missing.push_back(static_cast<std::uint32_t>(c));
            }
        }
        if (missing.empty()) return subset_group(closed);
        for (const std::uint32_t m : missing)
            if (std::find(seeds.begin(), seeds.end(), m) == seeds.end()) seeds.push_back(m);
    }
}

CharPoly FiniteMatrixGroup::element_char_poly(std::size_t pos) const {
    const unsigned n = dim_;
    const std::size_t nn = std::size_t(n) * n;
    const FieldDescriptor* d = pool_->descriptor();
    ScalarPool& pool = *pool_;

    // power sums p_k = tr(g^k) for k = 1..n, on packed matrices; traces are
    // accumulated as plain values, off the pool
    std::vector<TowerElement> psums;
    psums.reserve(n);
    std::vector<std::uint32_t> power(packed(pos).begin(), packed(pos).end());
    std::vector<std::uint32_t> tmp(nn);
    for (unsigned k = 1; k <= n; ++k) {
        if (k > 1) {
            pool.matmul_packed(n, power.data(), flat_.data() + pos * nn, tmp.data());
            power.swap(tmp);
        }
        TowerElement tr = TowerElement::zero(d);
        for (unsigned i = 0; i < n; ++i) tr += pool.at(power[i * n + i]);
        psums.push_back(std::move(tr));
    }

    // Newton: k e_k = sum_{i=1..k} (-1)^{i-1} e_{k-i} p_i, with e_0 = 1
    std::vector<TowerElement> e{TowerElement::one(d)};
    for (unsigned k = 1; k <= n; ++k) {
        TowerElement acc = TowerElement::zero(d);
        for (unsigned i = 1; i <= k; ++i) {
            const TowerElement term = e[k - i] * psums[i - 1];
            if (i % 2)
                acc += term;
            else
                acc -= term;
        }
        e.push_back(acc.div_int(static_cast<long>(k)));
    }

    // char(x) = sum_k (-1)^k e_k x^{n-k}
    CharPoly p;
    p.coeffs.assign(n + 1, TowerElement::zero(d));
    for (unsigned k = 0; k <= n; ++k) {
        p.coeffs[n - k] = (k % 2) ? -e[k] : e[k];
    }
    return p;
}

bool FiniteMatrixGroup::simplicity_certificate() const {
    if (size_ == 1) return false;
    const ConjClassTable table = conjugacy_partition();
    for (std::size_t c = 0; c < table.class_count(); ++c) {
        if (table.representatives[c] == 0) continue;
        if (normal_closure(table.representatives[c]).size() != size_) return false;
    }
    return true;
}

}  // namespace wedge32
