#include "winset/mean_payoff.hpp"

#include <algorithm>
#include <climits>
#include <cstdlib>

#include "winset/checked.hpp"

namespace winset {

namespace {

// Keeps every rank and rescaled weight far from the long long edges so that
// rank - weight never overflows.
constexpr long long kRankCap = LLONG_MAX / 4;

int prio(const Arena& a, int v) {
    return a.has_priorities() ? a.priority[static_cast<size_t>(v)] : 0;
}

VertexSet priority_vertices(const Arena& a, int p, const VertexSet& mask) {
    VertexSet s(a.n);
    mask.for_each([&](int v) {
        if (prio(a, v) == p) s.set(v);
    });
    return s;
}

// Largest rescaled magnitude |w*z - y| over edges leaving `mask` vertices.
long long rescaled_magnitude(const Arena& a, const Rational& nu, const VertexSet& mask) {
    long long best = 0;
    mask.for_each([&](int u) {
        for (long long w : a.wout[static_cast<size_t>(u)]) {
            __int128 r = static_cast<__int128>(w) * nu.den - nu.num;
            if (r < 0) r = -r;
            detail::require(r <= kRankCap, "weight rescaling overflows");
            best = std::max(best, static_cast<long long>(r));
        }
    });
    return best;
}

void require_solver_input(const Arena& a, const VertexSet& mask) {
    detail::require(a.finalized(), "finalized arena required");
    detail::require(mask.universe() == a.n, "vertex set size mismatch");
    detail::require(a.kind != ModelKind::Mdp, "game or graph arena required");
    detail::require(a.weighted(), "weighted arena required");
    mask.for_each([&](int v) {
        detail::require(a.owner[static_cast<size_t>(v)] != Owner::Random,
                        "game or graph arena required");
        bool has = false;
        for (int t : a.out[static_cast<size_t>(v)]) {
            if (mask.test(t)) {
                has = true;
                break;
            }
        }
        detail::require(has, "total arena required");
    });
}

}  // namespace

long long EnergyDomain::pay(long long r, long long w) const {
    if (r > top) return top + 1;
    long long d = r - w;
    if (d <= 0) return 0;
    if (d > top) return top + 1;
    return d;
}

MpProgressMeasure::MpProgressMeasure(const Arena& game, const Rational& nu,
                                     const VertexSet& mask, std::optional<long long> top)
    : a_(&game), alive_(mask) {
    require_solver_input(game, mask);
    long long wmax = rescaled_magnitude(game, nu, mask);
    if (top) {
        detail::require(*top >= 0 && *top <= kRankCap, "top out of range");
        dom_.top = *top;
    } else {
        __int128 t = static_cast<__int128>(mask.count()) * wmax;
        detail::require(t <= kRankCap, "weight rescaling overflows");
        dom_.top = static_cast<long long>(t);
    }
    rank_.assign(static_cast<size_t>(game.n), 0);
    queued_.assign(static_cast<size_t>(game.n), 0);
    w_.resize(static_cast<size_t>(game.n));
    mask.for_each([&](int u) {
        const auto& ws = game.wout[static_cast<size_t>(u)];
        w_[static_cast<size_t>(u)].resize(ws.size());
        for (size_t i = 0; i < ws.size(); ++i)
            w_[static_cast<size_t>(u)][i] =
                static_cast<long long>(static_cast<__int128>(ws[i]) * nu.den - nu.num);
    });
    alive_.for_each([&](int v) {
        if (rank_[static_cast<size_t>(v)] < required(v)) push(v);
    });
    settle();
}

long long MpProgressMeasure::required(int v) const {
    bool p1 = a_->owner[static_cast<size_t>(v)] == Owner::P1;
    const auto& succ = a_->out[static_cast<size_t>(v)];
    const auto& ws = w_[static_cast<size_t>(v)];
    bool any = false;
    long long best = 0;
    for (size_t i = 0; i < succ.size(); ++i) {
        if (!alive_.test(succ[i])) continue;
        long long need = dom_.pay(rank_[static_cast<size_t>(succ[i])], ws[i]);
        if (!any || (p1 ? need < best : need > best)) best = need;
        any = true;
    }
    // Deletions keep the live subgame total, so `any` holds for live vertices.
    return any ? best : dom_.unbeatable();
}

void MpProgressMeasure::push(int v) {
    if (queued_[static_cast<size_t>(v)]) return;
    queued_[static_cast<size_t>(v)] = 1;
    queue_.push_back(v);
}

void MpProgressMeasure::settle() {
    while (!queue_.empty()) {
        int v = queue_.front();
        queue_.pop_front();
        queued_[static_cast<size_t>(v)] = 0;
        if (!alive_.test(v)) continue;
        long long need = required(v);
        if (need <= rank_[static_cast<size_t>(v)]) continue;
        rank_[static_cast<size_t>(v)] = need;
        for (int u : a_->in[static_cast<size_t>(v)]) {
            if (alive_.test(u)) push(u);
        }
    }
}

VertexSet MpProgressMeasure::winners() const {
    VertexSet w(a_->n);
    alive_.for_each([&](int v) {
        if (!dom_.saturated(rank_[static_cast<size_t>(v)])) w.set(v);
    });
    return w;
}

VertexSet MpProgressMeasure::remove_attractor(const VertexSet& a) {
    detail::require(a.universe() == a_->n, "vertex set size mismatch");
    VertexSet removed = a & alive_;
    VertexSet keep = alive_ - removed;
    keep.for_each([&](int v) {
        bool into = false, stays = false;
        for (int t : a_->out[static_cast<size_t>(v)]) {
            if (!alive_.test(t)) continue;
            if (removed.test(t))
                into = true;
            else
                stays = true;
        }
        if (a_->owner[static_cast<size_t>(v)] == Owner::P2)
            detail::require(!into, "deleted set is not attractor closed");
        else
            detail::require(stays, "deleted set is not attractor closed");
    });
    std::vector<long long> before;
    if (checked_mode()) before = rank_;
    alive_ = keep;
    keep.for_each([&](int v) {
        for (int t : a_->out[static_cast<size_t>(v)]) {
            if (removed.test(t)) {
                push(v);
                break;
            }
        }
    });
    settle();
    if (checked_mode()) {
        alive_.for_each([&](int v) {
            detail::invariant(rank_[static_cast<size_t>(v)] >= before[static_cast<size_t>(v)],
                              "decremental rank decreased");
        });
    }
    return winners();
}

MpProgressMeasure mp_progress_measure(const Arena& game, const Rational& nu,
                                      std::optional<long long> top) {
    return MpProgressMeasure(game, nu, game.vertices(), top);
}

MpProgressMeasure mp_decremental(const Arena& game, const Rational& nu) {
    return MpProgressMeasure(game, nu, game.vertices());
}

VertexSet mp_subset_winning(const Arena& game, const Rational& nu, const VertexSet* within) {
    VertexSet mask = within ? *within : game.vertices();
    if (mask.empty()) return VertexSet(game.n);
    require_solver_input(game, mask);
    long long wmax = rescaled_magnitude(game, nu, mask);
    if (wmax == 0) return MpProgressMeasure(game, nu, mask, 0).winners();
    __int128 bound = static_cast<__int128>(2) * mask.count() * wmax;
    detail::require(bound <= kRankCap, "weight rescaling overflows");
    for (long long t = wmax; t < static_cast<long long>(bound); t *= 2) {
        VertexSet w = MpProgressMeasure(game, nu, mask, t).winners();
        if (!w.empty()) return w;
    }
    return VertexSet(game.n);
}

namespace {

// Buechi(b) with threshold mean-payoff: peel regions player 2 can force out
// of b's player-1 attractor or out of the mean-payoff winners. The single
// decremental measure survives all rounds since every deletion is a player-2
// attractor.
VertexSet mp_buchi_in(const Arena& g, const Rational& nu, const VertexSet& b, VertexSet mask) {
    if (mask.empty()) return VertexSet(g.n);
    MpProgressMeasure dec(g, nu, mask);
    for (;;) {
        if (mask.empty()) return mask;
        VertexSet y = attractor(g, Owner::P1, b & mask, &mask);
        VertexSet x = mask - y;
        if (!x.empty()) {
            VertexSet a2 = attractor(g, Owner::P2, x, &mask);
            dec.remove_attractor(a2);
            mask -= a2;
            continue;
        }
        VertexSet u = dec.winners();
        if (u != mask) {
            VertexSet a2 = attractor(g, Owner::P2, mask - u, &mask);
            dec.remove_attractor(a2);
            mask -= a2;
            continue;
        }
        return mask;
    }
}

// coBuechi(bad) with threshold mean-payoff: grow the answer around subgames
// that win the plain threshold objective while avoiding bad. The measure is
// recomputed per round because the candidate region can grow back.
VertexSet mp_cobuchi_in(const Arena& g, const Rational& nu, const VertexSet& bad,
                        VertexSet mask) {
    VertexSet acc(g.n);
    for (;;) {
        if (mask.empty()) return acc;
        VertexSet y = attractor(g, Owner::P2, bad & mask, &mask);
        VertexSet x = mask - y;
        VertexSet z = mp_subset_winning(g, nu, &x);
        if (z.empty()) return acc;
        VertexSet grab = attractor(g, Owner::P1, z, &mask);
        acc |= grab;
        mask -= grab;
    }
}

VertexSet mp_parity_in(const Arena& g, const Rational& nu, VertexSet mask) {
    VertexSet none(g.n);
    if (mask.empty()) return none;
    std::vector<int> distinct;
    mask.for_each([&](int v) {
        int p = prio(g, v);
        if (std::find(distinct.begin(), distinct.end(), p) == distinct.end())
            distinct.push_back(p);
    });
    std::sort(distinct.begin(), distinct.end());
    if (distinct.size() <= 2) {
        bool any_even = false, any_odd = false;
        for (int p : distinct) (p % 2 == 0 ? any_even : any_odd) = true;
        if (!any_even) return none;
        if (!any_odd) return MpProgressMeasure(g, nu, mask).winners();
        VertexSet lows = priority_vertices(g, distinct.front(), mask);
        if (distinct.front() % 2 == 0) return mp_buchi_in(g, nu, lows, mask);
        return mp_cobuchi_in(g, nu, lows, mask);
    }
    int b = distinct.front();
    if (b % 2 == 0) {
        MpProgressMeasure dec(g, nu, mask);
        for (;;) {
            if (mask.empty()) return mask;
            VertexSet y = attractor(g, Owner::P1, priority_vertices(g, b, mask), &mask);
            VertexSet x = mask - y;
            if (!x.empty()) {
                VertexSet w1x = mp_parity_in(g, nu, x);
                VertexSet w2x = x - w1x;
                if (!w2x.empty()) {
                    VertexSet a2 = attractor(g, Owner::P2, w2x, &mask);
                    dec.remove_attractor(a2);
                    mask -= a2;
                    continue;
                }
            }
            VertexSet u = dec.winners();
            if (u != mask) {
                VertexSet a2 = attractor(g, Owner::P2, mask - u, &mask);
                dec.remove_attractor(a2);
                mask -= a2;
                continue;
            }
            return mask;
        }
    }
    VertexSet acc(g.n);
    for (;;) {
        if (mask.empty()) return acc;
        VertexSet y = attractor(g, Owner::P2, priority_vertices(g, b, mask), &mask);
        VertexSet rest = mask - y;
        VertexSet w1x = rest.empty() ? rest : mp_parity_in(g, nu, rest);
        if (w1x.empty()) return acc;
        VertexSet grab = attractor(g, Owner::P1, w1x, &mask);
        acc |= grab;
        mask -= grab;
    }
}

}  // namespace

VertexSet mp_buchi(const Arena& game, const Rational& nu, const VertexSet& b) {
    require_solver_input(game, game.vertices());
    detail::require(b.universe() == game.n, "vertex set size mismatch");
    return mp_buchi_in(game, nu, b, game.vertices());
}

VertexSet mp_cobuchi(const Arena& game, const Rational& nu, const VertexSet& bad) {
    require_solver_input(game, game.vertices());
    detail::require(bad.universe() == game.n, "vertex set size mismatch");
    return mp_cobuchi_in(game, nu, bad, game.vertices());
}

VertexSet mp_parity(const Arena& game, const Rational& nu) {
    require_solver_input(game, game.vertices());
    return mp_parity_in(game, nu, game.vertices());
}

namespace {

long long floordiv(__int128 num, __int128 den) {
    __int128 q = num / den;
    if (num % den != 0 && (num < 0) != (den < 0)) --q;
    return static_cast<long long>(q);
}

// Navigation over the candidate value set S = {y/z : 1 <= z <= n, |y| <= zW}.
// All optimal finite values live in S, so probing thresholds can move along
// it exactly.
struct ValueGrid {
    int n;
    long long w;

    // Largest element <= x; x must be >= -w.
    Rational floor_at(const Rational& x) const {
        std::optional<Rational> best;
        for (int z = 1; z <= n; ++z) {
            long long y = floordiv(static_cast<__int128>(x.num) * z, x.den);
            y = std::min(y, z * w);
            Rational cand(y, z);
            if (!best || *best < cand) best = cand;
        }
        return *best;
    }

    // Largest element strictly below x, if any.
    std::optional<Rational> pred(const Rational& x) const {
        std::optional<Rational> best;
        for (int z = 1; z <= n; ++z) {
            long long y = -floordiv(static_cast<__int128>(-x.num) * z, x.den) - 1;
            if (y < -z * w) continue;
            y = std::min(y, z * w);
            Rational cand(y, z);
            if (!best || *best < cand) best = cand;
        }
        return best;
    }

    // Smallest element strictly above x, if any.
    std::optional<Rational> succ(const Rational& x) const {
        std::optional<Rational> best;
        for (int z = 1; z <= n; ++z) {
            long long y = floordiv(static_cast<__int128>(x.num) * z, x.den) + 1;
            if (y > z * w) continue;
            y = std::max(y, -z * w);
            Rational cand(y, z);
            if (!best || cand < *best) best = cand;
        }
        return best;
    }
};

Rational rational_mid(const Rational& lo, const Rational& hi) {
    __int128 num = static_cast<__int128>(lo.num) * hi.den + static_cast<__int128>(hi.num) * lo.den;
    __int128 den = static_cast<__int128>(2) * lo.den * hi.den;
    __int128 a = num < 0 ? -num : num, b = den;
    while (b != 0) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    if (a > 1) {
        num /= a;
        den /= a;
    }
    detail::require(num >= LLONG_MIN / 2 && num <= LLONG_MAX / 2 && den <= LLONG_MAX / 2,
                    "weight rescaling overflows");
    return Rational(static_cast<long long>(num), static_cast<long long>(den));
}

// Dichotomic value search: probe the subgame at a threshold a in S and at
// its successor, which splits the vertices into exact value a, value above
// and value below. Both strict sides are closed subgames with unchanged
// values, so the recursion is sound; vertices never hit by an assignment
// cannot satisfy the parity condition and keep value minus infinity.
void values_rec(const Arena& g, const ValueGrid& grid, const VertexSet& mask,
                const Rational& lo, const Rational& hi, std::vector<MpValue>& val) {
    if (mask.empty() || hi < lo) return;
    Rational a = grid.floor_at(rational_mid(lo, hi));
    VertexSet geq = mp_parity_in(g, a, mask);
    std::optional<Rational> up = grid.succ(a);
    bool up_in_range = up.has_value() && !(hi < *up);
    VertexSet gtr = up_in_range ? mp_parity_in(g, *up, mask) : VertexSet(g.n);
    (geq - gtr).for_each([&](int v) { val[static_cast<size_t>(v)] = a; });
    std::optional<Rational> dn = grid.pred(a);
    if (dn.has_value() && !(*dn < lo)) values_rec(g, grid, mask - geq, lo, *dn, val);
    if (up_in_range) values_rec(g, grid, gtr, *up, hi, val);
}

}  // namespace

std::vector<MpValue> mp_parity_values(const Arena& game) {
    require_solver_input(game, game.vertices());
    std::vector<MpValue> val(static_cast<size_t>(game.n));
    if (game.n == 0) return val;
    long long wmax = 0;
    for (const auto& row : game.wout)
        for (long long w : row) wmax = std::max(wmax, std::llabs(w));
    __int128 need = static_cast<__int128>(2) * game.n * game.n * wmax;
    detail::require(need <= kRankCap, "weight rescaling overflows");
    ValueGrid grid{game.n, wmax};
    values_rec(game, grid, game.vertices(), Rational(-wmax, 1), Rational(wmax, 1), val);
    return val;
}

}  // namespace winset
