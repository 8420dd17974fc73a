#include "symfp/exposure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "symfp/error.hpp"

namespace symfp {

bool CorankProfile::is_valid_walk() const noexcept {
    if (coranks.empty()) return true;
    if (coranks.front() > 1) return false;
    for (std::size_t i = 1; i < coranks.size(); ++i) {
        const auto a = static_cast<long long>(coranks[i - 1]);
        const auto b = static_cast<long long>(coranks[i]);
        if (b - a > 1 || a - b > 1) return false;
    }
    return true;
}

CongruenceExposure::CongruenceExposure(const FpContext& ctx, std::size_t capacity)
    : ctx_(ctx),
      capacity_(capacity),
      q_(capacity * capacity, 0),
      kind_(capacity, Kind::kernel),
      partner_(capacity, 0),
      block_(capacity, {0, 0, 0}),
      y_(capacity, 0),
      acc_(capacity, 0) {}

void CongruenceExposure::extend(std::span<const Residue> column, Residue diagonal) {
    const std::size_t t = t_;
    if (t >= capacity_) throw InvalidArgument("exposure capacity exhausted");
    if (column.size() != t) throw InvalidArgument("exposure column must have length " + std::to_string(t));
    const Residue p = ctx_.p();
    const auto row = [&](std::size_t r) { return std::span<Residue>(q_.data() + r * capacity_, t + 1); };

    for (std::size_t r = 0; r < t; ++r) y_[r] = ctx_.dot(row(r).first(t), column);

    // New row starts as e_t; pivot contributions are accumulated lazily.
    std::fill(acc_.begin(), acc_.begin() + t + 1, 0);
    acc_[t] = 1;
    std::uint64_t pending = 0;
    Residue z = diagonal % p;
    auto axpy = [&](std::size_t r, Residue coeff) {
        if (coeff == 0) return;
        if (pending == ctx_.lazy_budget()) {
            for (std::size_t k = 0; k < t; ++k) acc_[k] %= p;
            pending = 0;
        }
        const std::uint64_t g = ctx_.neg(coeff);
        const Residue* src = q_.data() + r * capacity_;
        for (std::size_t k = 0; k < t; ++k) acc_[k] += g * src[k];
        ++pending;
    };

    std::size_t first_kernel = t;
    for (std::size_t r = 0; r < t; ++r) {
        switch (kind_[r]) {
            case Kind::kernel:
                if (y_[r] != 0 && first_kernel == t) first_kernel = r;
                break;
            case Kind::single: {
                if (y_[r] == 0) break;
                const Residue c = ctx_.mul(y_[r], ctx_.inv(block_[r][0]));
                axpy(r, c);
                z = ctx_.sub(z, ctx_.mul(c, y_[r]));
                break;
            }
            case Kind::pair_first: {
                const std::size_t s = partner_[r];
                const auto [a, b, c] = block_[r];
                const Residue det_inv = ctx_.inv(ctx_.sub(ctx_.mul(a, c), ctx_.mul(b, b)));
                const Residue wr = ctx_.mul(det_inv, ctx_.sub(ctx_.mul(c, y_[r]), ctx_.mul(b, y_[s])));
                const Residue ws = ctx_.mul(det_inv, ctx_.sub(ctx_.mul(a, y_[s]), ctx_.mul(b, y_[r])));
                axpy(r, wr);
                axpy(s, ws);
                z = ctx_.sub(z, ctx_.add(ctx_.mul(wr, y_[r]), ctx_.mul(ws, y_[s])));
                break;
            }
            case Kind::pair_second:
                break;
        }
    }

    auto fresh = row(t);
    for (std::size_t k = 0; k <= t; ++k) fresh[k] = static_cast<Residue>(acc_[k] % p);

    if (first_kernel < t) {
        // Clear the coupling of the other kernel coordinates through j.
        const std::size_t j = first_kernel;
        const Residue yj_inv = ctx_.inv(y_[j]);
        const Residue* qj = q_.data() + j * capacity_;
        for (std::size_t l = j + 1; l < t; ++l) {
            if (kind_[l] != Kind::kernel || y_[l] == 0) continue;
            const Residue g = ctx_.neg(ctx_.mul(y_[l], yj_inv));
            Residue* ql = q_.data() + l * capacity_;
            for (std::size_t k = 0; k < t; ++k) ql[k] = ctx_.add(ql[k], ctx_.mul(g, qj[k]));
        }
        kind_[j] = Kind::pair_first;
        kind_[t] = Kind::pair_second;
        partner_[j] = t;
        partner_[t] = j;
        block_[j] = {0, y_[j], z};
        --kernel_count_;
    } else if (z != 0) {
        kind_[t] = Kind::single;
        block_[t] = {z, 0, 0};
    } else {
        kind_[t] = Kind::kernel;
        ++kernel_count_;
    }
    ++t_;
}

std::vector<FpVector> CongruenceExposure::kernel_vectors() const {
    std::vector<FpVector> out;
    for (std::size_t r = 0; r < t_; ++r)
        if (kind_[r] == Kind::kernel) out.emplace_back(q_.begin() + r * capacity_, q_.begin() + r * capacity_ + t_);
    return out;
}

CorankProfile corank_profile(const SymMatrix& m, const FpContext& ctx, Residue lambda, ProfileMethod method) {
    const SymMatrix a = m.is_integral() ? reduce(m, ctx, lambda) : shift_diagonal(m, ctx, lambda);
    const std::size_t n = a.dim();
    CorankProfile profile{ctx.reduce(lambda), {}};
    profile.coranks.reserve(n);
    if (method == ProfileMethod::fresh) {
        for (std::size_t t = 1; t <= n; ++t) profile.coranks.push_back(t - rank_fp(a.leading(t), ctx));
        return profile;
    }
    CongruenceExposure exposure(ctx, n);
    std::vector<Residue> column;
    column.reserve(n);
    const auto packed = a.packed();
    for (std::size_t t = 0; t < n; ++t) {
        const std::size_t base = SymMatrix::index(0, t);
        column.assign(packed.begin() + base, packed.begin() + base + t);
        exposure.extend(column, static_cast<Residue>(packed[base + t]));
        profile.coranks.push_back(exposure.corank());
    }
    return profile;
}

std::vector<TransitionRow> transition_counts(std::span<const CorankProfile> profiles, std::size_t t_min,
                                             std::size_t t_max) {
    if (t_min < 1 || t_min > t_max) throw InvalidArgument("t-range must satisfy 1 <= t_min <= t_max");
    std::vector<TransitionRow> rows;
    for (const auto& prof : profiles) {
        if (prof.coranks.size() < t_max + 1)
            throw InvalidArgument("t_max must be at most n-1 for every profile (n = " +
                                  std::to_string(prof.coranks.size()) + ")");
        for (std::size_t t = t_min; t <= t_max; ++t) {
            const std::size_t k = prof.coranks[t - 1];
            const auto step = static_cast<long long>(prof.coranks[t]) - static_cast<long long>(k);
            if (step < -1 || step > 1) throw std::logic_error("corank step outside {-1,0,1}");
            if (rows.size() <= k)
                for (std::size_t kk = rows.size(); kk <= k; ++kk) rows.push_back(TransitionRow{kk, {}, 0, {}, {}});
            ++rows[k].counts[static_cast<std::size_t>(step + 1)];
            ++rows[k].total;
        }
    }
    for (auto& r : rows) {
        if (r.total == 0) continue;
        const auto n = static_cast<double>(r.total);
        for (std::size_t s = 0; s < 3; ++s) {
            const double f = static_cast<double>(r.counts[s]) / n;
            r.frequency[s] = f;
            r.std_error[s] = std::sqrt(f * (1.0 - f) / n);
        }
    }
    return rows;
}

}  // namespace symfp
