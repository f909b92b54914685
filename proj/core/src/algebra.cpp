#include "qhat/algebra.hpp"

#include <algorithm>
#include <set>

namespace qhat {

AlgebraPtr BasicAlgebra::create(Data data) {
    auto alg = std::shared_ptr<BasicAlgebra>(new BasicAlgebra(std::move(data)));
    alg->validate();
    return alg;
}

Mat BasicAlgebra::mul(const Mat& x, const Mat& y) const {
    const std::size_t n = dim();
    Mat acc(n, 1, d_.field);
    for (std::size_t i = 0; i < n; ++i) {
        std::uint32_t xi = x(i, 0);
        if (!xi) continue;
        acc = acc + (d_.left_mul[i] * y).scaled(xi);
    }
    return acc;
}

Mat BasicAlgebra::unit() const {
    Mat u(dim(), 1, d_.field);
    for (std::size_t e : d_.idempotents) u(e, 0) = 1;
    return u;
}

bool BasicAlgebra::is_idempotent_index(std::size_t i) const {
    return std::find(d_.idempotents.begin(), d_.idempotents.end(), i) !=
           d_.idempotents.end();
}

void BasicAlgebra::validate() const {
    const std::size_t n = dim();
    const Gf& gf = d_.field;
    if (d_.left_mul.size() != n || d_.src.size() != n || d_.tgt.size() != n)
        throw InputError("algebra '" + d_.id + "': table size mismatch");
    if (d_.vertex_names.size() != d_.idempotents.size())
        throw InputError("algebra '" + d_.id + "': vertex name count mismatch");
    for (const Mat& m : d_.left_mul)
        if (m.rows() != n || m.cols() != n)
            throw InputError("algebra '" + d_.id + "': bad multiplication table");

    // Basis partition: idempotents and radical cover everything once.
    {
        std::set<std::size_t> seen;
        for (std::size_t e : d_.idempotents) seen.insert(e);
        for (std::size_t r : d_.radical) seen.insert(r);
        if (seen.size() != n ||
            d_.idempotents.size() + d_.radical.size() != n)
            throw InputError("algebra '" + d_.id +
                             "': basis is not idempotents + radical");
    }

    // Orthogonal idempotents summing to 1.
    const std::size_t r = d_.idempotents.size();
    for (std::size_t a = 0; a < r; ++a) {
        for (std::size_t b = 0; b < r; ++b) {
            Mat prod = mul_basis(d_.idempotents[a], d_.idempotents[b]);
            Mat expect(n, 1, gf);
            if (a == b) expect(d_.idempotents[a], 0) = 1;
            if (!(prod == expect))
                throw InputError("algebra '" + d_.id +
                                 "': idempotents not orthogonal");
        }
    }
    Mat u = unit();
    for (std::size_t i = 0; i < n; ++i) {
        Mat bi(n, 1, gf);
        bi(i, 0) = 1;
        if (!(mul(u, bi) == bi) || !(mul(bi, u) == bi))
            throw InputError("algebra '" + d_.id +
                             "': idempotents do not sum to a unit");
    }

    // Peirce positions.
    for (std::size_t i = 0; i < n; ++i) {
        if (d_.src[i] >= r || d_.tgt[i] >= r)
            throw InputError("algebra '" + d_.id + "': bad Peirce index");
        Mat bi(n, 1, gf);
        bi(i, 0) = 1;
        Mat et(n, 1, gf), es(n, 1, gf);
        et(d_.idempotents[d_.tgt[i]], 0) = 1;
        es(d_.idempotents[d_.src[i]], 0) = 1;
        if (!(mul(et, bi) == bi) || !(mul(bi, es) == bi))
            throw InputError("algebra '" + d_.id +
                             "': basis not Peirce-adapted at " + d_.labels[i]);
    }

    // Radical spans a nilpotent ideal.
    {
        RowSpan power(n, gf);
        for (std::size_t i : d_.radical) {
            std::vector<std::uint32_t> row(n, 0);
            row[i] = 1;
            power.add_row(std::move(row));
        }
        std::size_t steps = 0;
        while (power.dim() > 0) {
            if (++steps > n + 1)
                throw InputError("algebra '" + d_.id + "': radical not nilpotent");
            RowSpan next(n, gf);
            for (const auto& xrow : power.rows()) {
                Mat x(n, 1, gf);
                for (std::size_t i = 0; i < n; ++i) x(i, 0) = xrow[i];
                for (std::size_t j : d_.radical) {
                    Mat bj(n, 1, gf);
                    bj(j, 0) = 1;
                    Mat prod = mul(x, bj);
                    std::vector<std::uint32_t> row(n);
                    for (std::size_t i = 0; i < n; ++i) row[i] = prod(i, 0);
                    next.add_row(std::move(row));
                }
            }
            power = std::move(next);
        }
    }

    // Associativity through the regular representation: all pairs when
    // small, a fixed deterministic sample otherwise.
    auto check_pair = [&](std::size_t i, std::size_t j) {
        Mat lhs = d_.left_mul[i] * d_.left_mul[j];
        Mat prod = mul_basis(i, j);
        Mat rhs(n, n, gf);
        for (std::size_t k = 0; k < n; ++k) {
            std::uint32_t c = prod(k, 0);
            if (c) rhs = rhs + d_.left_mul[k].scaled(c);
        }
        if (!(lhs == rhs))
            throw InputError("algebra '" + d_.id +
                             "': multiplication not associative at (" +
                             d_.labels[i] + ", " + d_.labels[j] + ")");
    };
    if (n <= 48) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) check_pair(i, j);
    } else {
        std::uint64_t s = 0x9e3779b97f4a7c15ull ^ (n * 0x100000001b3ull);
        for (int t = 0; t < 512; ++t) {
            s ^= s << 13; s ^= s >> 7; s ^= s << 17;
            check_pair(static_cast<std::size_t>(s % n),
                       static_cast<std::size_t>((s >> 17) % n));
        }
    }
}

AlgebraPtr BasicAlgebra::opposite() const {
    std::lock_guard<std::mutex> lock(op_mutex_);
    if (auto cached = op_cache_.lock()) return cached;

    Data od;
    od.id = d_.id + "^op";
    od.field = d_.field;
    od.labels = d_.labels;
    od.idempotents = d_.idempotents;
    od.radical = d_.radical;
    od.src = d_.tgt;
    od.tgt = d_.src;
    od.vertex_names = d_.vertex_names;
    const std::size_t n = dim();
    od.left_mul.assign(n, Mat(n, n, d_.field));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Mat c = mul_basis(j, i); // c^op(i,j) = c(j,i)
            for (std::size_t k = 0; k < n; ++k) od.left_mul[i](k, j) = c(k, 0);
        }

    auto op = std::shared_ptr<BasicAlgebra>(new BasicAlgebra(std::move(od)));
    op->validate();
    op->op_cache_ = weak_from_this();
    op_cache_ = op;
    return op;
}

bool BasicAlgebra::same_structure(const BasicAlgebra& o) const {
    if (dim() != o.dim() || !(d_.field == o.d_.field)) return false;
    if (d_.idempotents != o.d_.idempotents) return false;
    for (std::size_t i = 0; i < dim(); ++i)
        if (!(d_.left_mul[i] == o.d_.left_mul[i])) return false;
    return true;
}

} // namespace qhat
