#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "epsbias/matrix.hpp"
#include "epsbias/parallel.hpp"

namespace epsbias {

inline constexpr std::uint64_t kDefaultEnumCap = std::uint64_t{1} << 24;

// Comparison slack for character-sum magnitudes over fields with p > 2; for
// p = 2 the sums are exact integers and no slack is applied.
inline constexpr double kBiasTolerance = 1e-9;

// A linear [n, k] code held by its RREF-canonical generator matrix, so equal
// codes compare equal. k = 0 (the zero code) is representable; distance and
// bias are undefined there and raise ZeroCode.
class LinearCode {
  public:
    LinearCode(FieldPtr field, std::size_t n, const MatrixFq& rows)
        : field_(std::move(field)), n_(n), G_(MatrixFq(field_, 0, n)), caches_(std::make_shared<Caches>()) {
        if (rows.cols() != n) throw BadParameters("generator column count differs from block length");
        require_same_field(*field_, *rows.field());
        auto [R, rk, pivots] = rref(rows);
        MatrixFq G(field_, rk, n);
        for (std::size_t i = 0; i < rk; ++i)
            for (std::size_t j = 0; j < n; ++j) G(i, j) = R(i, j);
        G_ = std::move(G);
        k_ = rk;
    }

    const FieldPtr& field() const { return field_; }
    std::size_t n() const { return n_; }
    std::size_t k() const { return k_; }
    double rate() const { return static_cast<double>(k_) / static_cast<double>(n_); }
    const MatrixFq& generator() const { return G_; }

    friend bool operator==(const LinearCode& a, const LinearCode& b) {
        return *a.field_ == *b.field_ && a.n_ == b.n_ && a.G_ == b.G_;
    }

    // write-once distance caches, shared across copies
    std::optional<std::size_t> cached_distance() const {
        std::lock_guard<std::mutex> lock(caches_->m);
        return caches_->d;
    }
    void store_distance(std::size_t d) const {
        std::lock_guard<std::mutex> lock(caches_->m);
        if (!caches_->d) caches_->d = d;
    }
    std::optional<std::size_t> cached_dual_distance() const {
        std::lock_guard<std::mutex> lock(caches_->m);
        return caches_->d_dual;
    }
    void store_dual_distance(std::size_t d) const {
        std::lock_guard<std::mutex> lock(caches_->m);
        if (!caches_->d_dual) caches_->d_dual = d;
    }

  private:
    struct Caches {
        std::mutex m;
        std::optional<std::size_t> d, d_dual;
    };

    FieldPtr field_;
    std::size_t n_, k_ = 0;
    MatrixFq G_;
    std::shared_ptr<Caches> caches_;
};

inline LinearCode dual(const LinearCode& C) {
    return LinearCode(C.field(), C.n(), nullspace(C.generator()));
}

// q^k, guarded against the enumeration cap (and overflow).
inline std::uint64_t codeword_count_checked(const LinearCode& C, std::uint64_t cap) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < C.k(); ++i) {
        if (count > cap / C.field()->q() + 1) throw EnumerationCapExceeded("q^k exceeds the enumeration cap");
        count *= C.field()->q();
    }
    if (count > cap) throw EnumerationCapExceeded("q^k exceeds the enumeration cap");
    return count;
}

namespace detail {

// Walks message indices in [0, q^k) as a base-q odometer, maintaining the
// current codeword and its symbol counts incrementally: bumping digit i by
// delta adds delta * G_i to the word.
class CodewordWalker {
  public:
    CodewordWalker(const LinearCode& C, std::uint64_t start) : C_(&C), F_(C.field().get()) {
        const std::uint32_t q = F_->q();
        digits_.assign(C.k(), 0);
        word_.assign(C.n(), 0);
        counts_.assign(q, 0);
        std::uint64_t v = start;
        for (std::size_t i = 0; i < C.k(); ++i) {
            digits_[i] = static_cast<felem>(v % q);
            v /= q;
        }
        const MatrixFq& G = C.generator();
        for (std::size_t i = 0; i < C.k(); ++i) {
            if (digits_[i] == 0) continue;
            for (std::size_t j = 0; j < C.n(); ++j)
                word_[j] = F_->add(word_[j], F_->mul(digits_[i], G(i, j)));
        }
        for (felem w : word_) ++counts_[w];
        index_ = start;
    }

    std::uint64_t index() const { return index_; }
    std::span<const felem> word() const { return word_; }
    std::span<const std::uint32_t> counts() const { return counts_; }
    std::size_t weight() const { return word_.size() - counts_[0]; }

    void advance() {
        const std::uint32_t q = F_->q();
        const MatrixFq& G = C_->generator();
        for (std::size_t i = 0; i < digits_.size(); ++i) {
            const felem old = digits_[i];
            const felem bumped = (old + 1u == q) ? felem{0} : static_cast<felem>(old + 1);
            digits_[i] = bumped;
            const felem delta = F_->sub(bumped, old);
            for (std::size_t j = 0; j < word_.size(); ++j) {
                const felem g = G(i, j);
                if (g == 0) continue;
                const felem w = F_->add(word_[j], F_->mul(delta, g));
                --counts_[word_[j]];
                ++counts_[w];
                word_[j] = w;
            }
            if (bumped != 0) break;  // no carry
        }
        ++index_;
    }

  private:
    const LinearCode* C_;
    const Field* F_;
    std::vector<felem> digits_;
    std::vector<felem> word_;
    std::vector<std::uint32_t> counts_;
    std::uint64_t index_ = 0;
};

// Character-sum evaluation from symbol counts. For p = 2 the values are
// exact integers; otherwise complex double with the documented tolerance.
class CharSums {
  public:
    explicit CharSums(const Field& F) : F_(&F), q_(F.q()), binary_(F.p() == 2) {
        if (binary_) {
            sign_.resize(static_cast<std::size_t>(q_) * q_);
            for (std::uint32_t a = 0; a < q_; ++a)
                for (std::uint32_t t = 0; t < q_; ++t)
                    sign_[static_cast<std::size_t>(a) * q_ + t] =
                        static_cast<std::int8_t>(F.character_sign(static_cast<felem>(a), static_cast<felem>(t)));
        } else {
            idx_.resize(static_cast<std::size_t>(q_) * q_);
            for (std::uint32_t a = 0; a < q_; ++a)
                for (std::uint32_t t = 0; t < q_; ++t)
                    idx_[static_cast<std::size_t>(a) * q_ + t] =
                        static_cast<std::uint8_t>(F.trace(F.mul(static_cast<felem>(a), static_cast<felem>(t))));
            roots_.resize(F.p());
            for (std::uint32_t j = 0; j < F.p(); ++j) {
                const double ang = 2.0 * std::numbers::pi * j / F.p();
                roots_[j] = {std::cos(ang), std::sin(ang)};
            }
        }
    }

    // max over a in F_q^* of |sum_i omega^{tr(a x_i)}|, from symbol counts
    double max_abs(std::span<const std::uint32_t> counts) const {
        if (binary_) {
            std::int64_t best = 0;
            for (std::uint32_t a = 1; a < q_; ++a) {
                const std::int8_t* row = sign_.data() + static_cast<std::size_t>(a) * q_;
                std::int64_t s = 0;
                for (std::uint32_t t = 0; t < q_; ++t) s += static_cast<std::int64_t>(counts[t]) * row[t];
                if (s < 0) s = -s;
                if (s > best) best = s;
            }
            return static_cast<double>(best);
        }
        double best = 0.0;
        for (std::uint32_t a = 1; a < q_; ++a) {
            const std::uint8_t* row = idx_.data() + static_cast<std::size_t>(a) * q_;
            std::complex<double> s{0.0, 0.0};
            for (std::uint32_t t = 0; t < q_; ++t)
                if (counts[t] != 0) s += static_cast<double>(counts[t]) * roots_[row[t]];
            best = std::max(best, std::abs(s));
        }
        return best;
    }

    bool binary() const { return binary_; }

  private:
    const Field* F_;
    std::uint32_t q_;
    bool binary_;
    std::vector<std::int8_t> sign_;
    std::vector<std::uint8_t> idx_;
    std::vector<std::complex<double>> roots_;
};

}  // namespace detail

// Streams all q^k codewords in message-index order. fn(index, word) returns
// false to stop early. Raises EnumerationCapExceeded before any work if
// q^k > cap.
template <class Fn>
void for_each_codeword(const LinearCode& C, Fn&& fn, std::uint64_t cap = kDefaultEnumCap) {
    const std::uint64_t total = codeword_count_checked(C, cap);
    detail::CodewordWalker walker(C, 0);
    for (std::uint64_t i = 0; i < total; ++i) {
        if (!fn(i, walker.word())) return;
        if (i + 1 < total) walker.advance();
    }
}

// Chunked enumeration: the index range is cut into a fixed number of chunks
// (independent of worker count), each chunk is walked by one task, and the
// per-chunk results are returned in chunk order. Reductions over this vector
// are therefore schedule-independent.
template <class Result, class ChunkFn>
std::vector<Result> enumerate_chunks(const LinearCode& C, std::uint64_t cap, ChunkFn&& fn,
                                     std::size_t workers = 0) {
    const std::uint64_t total = codeword_count_checked(C, cap);
    const std::uint64_t chunk_target = 1u << 16;
    std::size_t chunks = static_cast<std::size_t>(std::min<std::uint64_t>(64, (total + chunk_target - 1) / chunk_target));
    if (chunks == 0) chunks = 1;
    if (workers == 0) workers = default_workers();
    std::vector<Result> results(chunks);
    run_tasks(chunks, workers, [&](std::size_t c) {
        const std::uint64_t begin = total * c / chunks;
        const std::uint64_t end = total * (c + 1) / chunks;
        detail::CodewordWalker walker(C, begin);
        results[c] = fn(walker, begin, end);
    });
    return results;
}

inline std::size_t weight(std::span<const felem> word) {
    std::size_t w = 0;
    for (felem e : word) w += (e != 0);
    return w;
}

// Exact minimum nonzero-codeword weight by full enumeration.
inline std::size_t distance(const LinearCode& C, std::uint64_t cap = kDefaultEnumCap) {
    if (C.k() == 0) throw ZeroCode("distance of the zero code is undefined");
    if (auto d = C.cached_distance()) return *d;
    auto mins = enumerate_chunks<std::size_t>(C, cap, [&](detail::CodewordWalker& w, std::uint64_t begin, std::uint64_t end) {
        std::size_t best = C.n() + 1;
        for (std::uint64_t i = begin; i < end; ++i) {
            if (i != 0) {
                const std::size_t wt = w.weight();
                if (wt < best) best = wt;
            }
            if (i + 1 < end) w.advance();
        }
        return best;
    });
    std::size_t d = C.n() + 1;
    for (std::size_t m : mins) d = std::min(d, m);
    C.store_distance(d);
    return d;
}

inline std::size_t dual_distance(const LinearCode& C, std::uint64_t cap = kDefaultEnumCap) {
    if (auto d = C.cached_dual_distance()) return *d;
    const std::size_t d = distance(dual(C), cap);
    C.store_dual_distance(d);
    return d;
}

// Bias of a single word: max_{a in F_q^*} |sum_i omega^{tr(a x_i)}| / n.
inline double bias_of_word(std::span<const felem> x, const Field& F) {
    if (x.empty()) throw DomainError("bias of the empty word is undefined");
    std::vector<std::uint32_t> counts(F.q(), 0);
    for (felem e : x) {
        if (e >= F.q()) throw BadParameters("symbol outside field");
        ++counts[e];
    }
    const detail::CharSums sums(F);
    return sums.max_abs(counts) / static_cast<double>(x.size());
}

struct BiasReport {
    double epsilon = 0.0;                    // realized bias of the code
    std::vector<felem> witness;              // codeword attaining it (ties: smallest message index)
    std::optional<std::size_t> ceps_size;    // |C_eps| for the queried eps, when given
    std::uint64_t enumerated = 0;            // codewords examined
};

namespace detail {

inline bool exceeds_eps(double char_max, double eps, std::size_t n, bool binary) {
    // strict "not eps-biased" comparison; exact for p = 2
    const double slack = binary ? 0.0 : kBiasTolerance * static_cast<double>(n);
    return char_max > eps * static_cast<double>(n) + slack;
}

inline std::vector<felem> codeword_at(const LinearCode& C, std::uint64_t msg_index) {
    const CodewordWalker w(C, msg_index);
    return {w.word().begin(), w.word().end()};
}

}  // namespace detail

// Realized bias over all nonzero codewords, plus |C_eps| for an optional
// queried threshold.
inline BiasReport bias_of_code(const LinearCode& C, std::optional<double> query_eps = {},
                               std::uint64_t cap = kDefaultEnumCap) {
    if (C.k() == 0) throw ZeroCode("bias of the zero code is undefined");
    const detail::CharSums sums(*C.field());
    struct Chunk {
        double char_max = -1.0;
        std::uint64_t witness = 0;
        std::size_t ceps = 0;
        std::uint64_t seen = 0;
    };
    auto chunks = enumerate_chunks<Chunk>(C, cap, [&](detail::CodewordWalker& w, std::uint64_t begin, std::uint64_t end) {
        Chunk acc;
        for (std::uint64_t i = begin; i < end; ++i) {
            if (i != 0) {
                const double s = sums.max_abs(w.counts());
                if (s > acc.char_max) {
                    acc.char_max = s;
                    acc.witness = i;
                }
                if (query_eps && detail::exceeds_eps(s, *query_eps, C.n(), sums.binary())) ++acc.ceps;
            }
            ++acc.seen;
            if (i + 1 < end) w.advance();
        }
        return acc;
    });
    Chunk total;
    for (const Chunk& c : chunks) {
        if (c.char_max > total.char_max) {
            total.char_max = c.char_max;
            total.witness = c.witness;
        }
        total.ceps += c.ceps;
        total.seen += c.seen;
    }
    BiasReport report;
    report.epsilon = total.char_max / static_cast<double>(C.n());
    report.witness = detail::codeword_at(C, total.witness);
    report.enumerated = total.seen;
    if (query_eps) report.ceps_size = total.ceps;
    return report;
}

// C_eps: exactly the nonzero codewords whose bias strictly exceeds eps.
inline std::vector<std::vector<felem>> not_eps_biased_set(const LinearCode& C, double eps,
                                                          std::uint64_t cap = kDefaultEnumCap) {
    const detail::CharSums sums(*C.field());
    auto chunks = enumerate_chunks<std::vector<std::vector<felem>>>(
        C, cap, [&](detail::CodewordWalker& w, std::uint64_t begin, std::uint64_t end) {
            std::vector<std::vector<felem>> bad;
            for (std::uint64_t i = begin; i < end; ++i) {
                if (i != 0 && detail::exceeds_eps(sums.max_abs(w.counts()), eps, C.n(), sums.binary()))
                    bad.emplace_back(w.word().begin(), w.word().end());
                if (i + 1 < end) w.advance();
            }
            return bad;
        });
    std::vector<std::vector<felem>> all;
    for (auto& c : chunks)
        for (auto& v : c) all.push_back(std::move(v));
    return all;
}

// Emp_x(t) = |{i : x_i = t}| / n over F_q.
inline std::vector<double> empirical_distribution(std::span<const felem> x, const Field& F) {
    if (x.empty()) throw DomainError("empirical distribution of the empty word is undefined");
    std::vector<double> emp(F.q(), 0.0);
    for (felem e : x) {
        if (e >= F.q()) throw BadParameters("symbol outside field");
        emp[e] += 1.0;
    }
    for (double& v : emp) v /= static_cast<double>(x.size());
    return emp;
}

struct UniformityCheck {
    bool condition_holds = false;  // the implication verified for eps_candidate
    double eps_candidate = 0.0;    // smallest eps for which every Emp_x(t) <= 1/q + eps/(2(q-1))
    double bias = 0.0;
};

// Smallest eps satisfying the empirical-closeness hypothesis, and the check
// that the word's bias is indeed bounded by it.
inline UniformityCheck uniformity_implies_bias_check(std::span<const felem> x, const Field& F) {
    const auto emp = empirical_distribution(x, F);
    double max_emp = 0.0;
    for (double v : emp) max_emp = std::max(max_emp, v);
    const double q = static_cast<double>(F.q());
    UniformityCheck out;
    out.eps_candidate = std::max(0.0, 2.0 * (q - 1.0) * (max_emp - 1.0 / q));
    out.bias = bias_of_word(x, F);
    out.condition_holds = out.bias <= out.eps_candidate + kBiasTolerance;
    return out;
}

}  // namespace epsbias
