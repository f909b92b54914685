#include "qhat/module.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>

namespace qhat {

namespace {

std::vector<std::size_t> offsets_of(const std::vector<std::size_t>& dimvec) {
    std::vector<std::size_t> off(dimvec.size() + 1, 0);
    for (std::size_t v = 0; v < dimvec.size(); ++v) off[v + 1] = off[v] + dimvec[v];
    return off;
}

} // namespace

Module Module::from_graded(AlgebraPtr alg, std::vector<std::size_t> dimvec,
                           std::vector<Mat> action) {
    assert(dimvec.size() == alg->vertex_count());
    assert(action.size() == alg->dim());
    auto d = std::make_shared<Data>();
    d->alg = std::move(alg);
    d->offset = offsets_of(dimvec);
    d->dimvec = std::move(dimvec);
    d->action = std::move(action);
    return Module(std::move(d));
}

Module Module::zero(AlgebraPtr alg) {
    std::vector<std::size_t> dimvec(alg->vertex_count(), 0);
    std::vector<Mat> action(alg->dim(), Mat(0, 0, alg->field()));
    return from_graded(std::move(alg), std::move(dimvec), std::move(action));
}

Module Module::from_raw(AlgebraPtr alg, const std::vector<Mat>& action) {
    const std::size_t r = alg->vertex_count();
    const std::size_t n = alg->dim();
    if (action.size() != n) throw InputError("one action matrix per basis element");
    const std::size_t d = action.empty() ? 0 : action[0].rows();
    Gf gf = alg->field();

    // Basis of each idempotent image; together they must span everything.
    Mat basis(d, 0, gf);
    std::vector<std::size_t> dimvec(r, 0);
    for (std::size_t v = 0; v < r; ++v) {
        const Mat& ev = action[alg->idempotents()[v]];
        Mat img = column_space_basis(ev);
        dimvec[v] = img.cols();
        basis = basis.hcat(img);
    }
    if (std::accumulate(dimvec.begin(), dimvec.end(), std::size_t{0}) != d)
        throw InputError("idempotent actions do not decompose the space");
    auto inv = inverse(basis);
    if (!inv) throw InputError("idempotent images do not span");
    std::vector<Mat> graded(n, Mat(d, d, gf));
    for (std::size_t i = 0; i < n; ++i) graded[i] = (*inv) * action[i] * basis;
    return from_graded(std::move(alg), std::move(dimvec), std::move(graded));
}

Mat Module::action_block(std::size_t i) const {
    const auto& alg = *d_->alg;
    std::size_t s = alg.src(i), t = alg.tgt(i);
    return d_->action[i].block(offset(t), offset(s), vertex_dim(t), vertex_dim(s));
}

Mat Module::act_by(const Mat& coords) const {
    Mat out(dim(), dim(), d_->alg->field());
    for (std::size_t i = 0; i < d_->alg->dim(); ++i) {
        std::uint32_t c = coords(i, 0);
        if (c) out = out + d_->action[i].scaled(c);
    }
    return out;
}

std::size_t Module::length() const {
    // Count the radical series M > rad M > rad^2 M > ... > 0 with
    // multiplicities given by dimensions of the semisimple layers.
    std::size_t len = 0;
    Module cur = *this;
    while (!cur.is_zero()) {
        std::vector<Mat> rad = radical_vertex_bases(cur);
        std::size_t raddim = 0;
        for (const Mat& b : rad) raddim += b.cols();
        len += cur.dim() - raddim;
        if (raddim == cur.dim())
            throw InputError("module has no radical series (not nilpotent?)");
        cur = submodule_from_vertex_bases(cur, rad).sub;
    }
    return len;
}

void Module::validate() const {
    const auto& alg = *d_->alg;
    const std::size_t n = alg.dim();
    const std::size_t d = dim();
    Gf gf = alg.field();
    // Idempotents are the coordinate projections of the grading.
    for (std::size_t v = 0; v < alg.vertex_count(); ++v) {
        Mat expect(d, d, gf);
        for (std::size_t k = offset(v); k < offset(v + 1); ++k) expect(k, k) = 1;
        if (!(d_->action[alg.idempotents()[v]] == expect))
            throw InputError("idempotent action is not the grading projection");
    }
    // Structure constants: action(b_i) action(b_j) = action(b_i b_j).
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Mat lhs = d_->action[i] * d_->action[j];
            Mat prod = alg.mul_basis(i, j);
            Mat rhs(d, d, gf);
            for (std::size_t k = 0; k < n; ++k) {
                std::uint32_t c = prod(k, 0);
                if (c) rhs = rhs + d_->action[k].scaled(c);
            }
            if (!(lhs == rhs))
                throw InputError("action does not respect structure constants at (" +
                                 alg.label(i) + ", " + alg.label(j) + ")");
        }
    }
    // Support lies in the right Peirce block.
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t s = alg.src(i), t = alg.tgt(i);
        for (std::size_t rr = 0; rr < d; ++rr)
            for (std::size_t cc = 0; cc < d; ++cc) {
                bool in_block = rr >= offset(t) && rr < offset(t + 1) &&
                                cc >= offset(s) && cc < offset(s + 1);
                if (!in_block && d_->action[i](rr, cc) != 0)
                    throw InputError("action of " + alg.label(i) +
                                     " leaks outside its Peirce block");
            }
    }
}

bool Module::strictly_equal(const Module& o) const {
    if (d_ == o.d_) return true;
    if (d_->alg != o.d_->alg || d_->dimvec != o.d_->dimvec) return false;
    for (std::size_t i = 0; i < d_->action.size(); ++i)
        if (!(d_->action[i] == o.d_->action[i])) return false;
    return true;
}

std::size_t Module::content_hash() const {
    std::size_t h = 0x9e3779b9;
    for (std::size_t v : d_->dimvec) h = h * 131 + v;
    for (const Mat& m : d_->action) h = h * 1099511628211ull + m.hash();
    return h;
}

Morphism::Morphism(Module source, Module target, std::vector<Mat> blocks)
    : src_(std::move(source)), tgt_(std::move(target)), blocks_(std::move(blocks)) {
    assert(src_.algebra() == tgt_.algebra());
    assert(blocks_.size() == src_.algebra()->vertex_count());
    for (std::size_t v = 0; v < blocks_.size(); ++v) {
        assert(blocks_[v].rows() == tgt_.vertex_dim(v));
        assert(blocks_[v].cols() == src_.vertex_dim(v));
        (void)v;
    }
}

Morphism Morphism::identity(const Module& m) {
    std::vector<Mat> blocks;
    for (std::size_t v = 0; v < m.algebra()->vertex_count(); ++v)
        blocks.push_back(Mat::identity(m.vertex_dim(v), m.algebra()->field()));
    return Morphism(m, m, std::move(blocks));
}

Morphism Morphism::zero(const Module& source, const Module& target) {
    std::vector<Mat> blocks;
    for (std::size_t v = 0; v < source.algebra()->vertex_count(); ++v)
        blocks.push_back(Mat(target.vertex_dim(v), source.vertex_dim(v),
                             source.algebra()->field()));
    return Morphism(source, target, std::move(blocks));
}

Morphism Morphism::from_full(const Module& source, const Module& target,
                             const Mat& full) {
    assert(full.rows() == target.dim() && full.cols() == source.dim());
    std::vector<Mat> blocks;
    for (std::size_t v = 0; v < source.algebra()->vertex_count(); ++v)
        blocks.push_back(full.block(target.offset(v), source.offset(v),
                                    target.vertex_dim(v), source.vertex_dim(v)));
    return Morphism(source, target, std::move(blocks));
}

Mat Morphism::full() const {
    Mat m(tgt_.dim(), src_.dim(), src_.algebra()->field());
    for (std::size_t v = 0; v < blocks_.size(); ++v)
        m.set_block(tgt_.offset(v), src_.offset(v), blocks_[v]);
    return m;
}

Morphism Morphism::then(const Morphism& g) const {
    assert(g.src_.strictly_equal(tgt_));
    std::vector<Mat> blocks;
    for (std::size_t v = 0; v < blocks_.size(); ++v)
        blocks.push_back(g.blocks_[v] * blocks_[v]);
    return Morphism(src_, g.tgt_, std::move(blocks));
}

Morphism Morphism::operator+(const Morphism& o) const {
    std::vector<Mat> blocks;
    for (std::size_t v = 0; v < blocks_.size(); ++v)
        blocks.push_back(blocks_[v] + o.blocks_[v]);
    return Morphism(src_, tgt_, std::move(blocks));
}

Morphism Morphism::operator-(const Morphism& o) const {
    std::vector<Mat> blocks;
    for (std::size_t v = 0; v < blocks_.size(); ++v)
        blocks.push_back(blocks_[v] - o.blocks_[v]);
    return Morphism(src_, tgt_, std::move(blocks));
}

Morphism Morphism::scaled(std::uint32_t c) const {
    std::vector<Mat> blocks;
    for (const Mat& b : blocks_) blocks.push_back(b.scaled(c));
    return Morphism(src_, tgt_, std::move(blocks));
}

bool Morphism::is_zero() const {
    return std::all_of(blocks_.begin(), blocks_.end(),
                       [](const Mat& b) { return b.is_zero(); });
}

bool Morphism::intertwines() const {
    Mat f = full();
    for (std::size_t i = 0; i < src_.algebra()->dim(); ++i)
        if (!(f * src_.action(i) == tgt_.action(i) * f)) return false;
    return true;
}

Module standard_module(const AlgebraPtr& alg, StandardKind kind,
                       std::size_t vertex) {
    const std::size_t r = alg->vertex_count();
    if (vertex >= r) throw InputError("no such vertex index");
    Gf gf = alg->field();
    switch (kind) {
    case StandardKind::Simple: {
        std::vector<std::size_t> dimvec(r, 0);
        dimvec[vertex] = 1;
        std::vector<Mat> action(alg->dim(), Mat(1, 1, gf));
        action[alg->idempotents()[vertex]](0, 0) = 1;
        return Module::from_graded(alg, std::move(dimvec), std::move(action));
    }
    case StandardKind::Projective: {
        // Basis: algebra basis elements with src = vertex, grouped by tgt.
        std::vector<std::size_t> members; // algebra basis indices, graded order
        for (std::size_t v = 0; v < r; ++v)
            for (std::size_t i = 0; i < alg->dim(); ++i)
                if (alg->src(i) == vertex && alg->tgt(i) == v)
                    members.push_back(i);
        std::vector<std::size_t> coord_of(alg->dim(), SIZE_MAX);
        for (std::size_t k = 0; k < members.size(); ++k) coord_of[members[k]] = k;
        std::vector<std::size_t> dimvec(r, 0);
        for (std::size_t m : members) dimvec[alg->tgt(m)]++;
        const std::size_t d = members.size();
        std::vector<Mat> action(alg->dim(), Mat(d, d, gf));
        for (std::size_t a = 0; a < alg->dim(); ++a) {
            for (std::size_t k = 0; k < d; ++k) {
                Mat prod = alg->mul_basis(a, members[k]);
                for (std::size_t t = 0; t < alg->dim(); ++t) {
                    std::uint32_t c = prod(t, 0);
                    if (!c) continue;
                    assert(coord_of[t] != SIZE_MAX);
                    action[a](coord_of[t], k) = c;
                }
            }
        }
        return Module::from_graded(alg, std::move(dimvec), std::move(action));
    }
    case StandardKind::Injective: {
        Module p_op = standard_module(alg->opposite(), StandardKind::Projective,
                                      vertex);
        return dual_module(p_op);
    }
    }
    throw InputError("unreachable standard module kind");
}

Module module_from_literal(const AlgebraPtr& alg, const ModuleLiteral& lit) {
    const auto& words = alg->basis_words();
    const auto& quiver = alg->quiver();
    if (!words || !quiver)
        throw InputError("module literals need a quiver-built algebra");
    const std::size_t r = alg->vertex_count();
    Gf gf = alg->field();
    std::vector<std::size_t> dimvec(r, 0);
    for (const auto& [v, dv] : lit.dims) {
        if (v >= r) throw InputError("module '" + lit.name + "': bad vertex");
        dimvec[v] = dv;
    }
    auto off = [&](std::size_t v) {
        std::size_t o = 0;
        for (std::size_t w = 0; w < v; ++w) o += dimvec[w];
        return o;
    };
    // Per-arrow matrices, defaulting to zero.
    std::vector<Mat> arrow_mat;
    for (std::size_t a = 0; a < quiver->arrows.size(); ++a) {
        std::size_t s = quiver->arrows[a].source, t = quiver->arrows[a].target;
        auto it = lit.arrow_maps.find(a);
        if (it == lit.arrow_maps.end()) {
            arrow_mat.push_back(Mat(dimvec[t], dimvec[s], gf));
        } else {
            if (it->second.rows() != dimvec[t] || it->second.cols() != dimvec[s])
                throw InputError("module '" + lit.name + "': map for arrow '" +
                                 quiver->arrows[a].name + "' must be " +
                                 std::to_string(dimvec[t]) + "x" +
                                 std::to_string(dimvec[s]));
            arrow_mat.push_back(it->second);
        }
    }
    auto word_product = [&](const std::vector<std::size_t>& word) {
        // Apply the first arrow first.
        std::size_t s = quiver->arrows[word.front()].source;
        Mat m = Mat::identity(dimvec[s], gf);
        for (std::size_t a : word) m = arrow_mat[a] * m;
        return m;
    };
    // Relations must annihilate.
    for (const auto& rel : quiver->relations) {
        Mat acc(dimvec[rel.target], dimvec[rel.source], gf);
        for (const auto& t : rel.terms)
            acc = acc + word_product(t.arrows).scaled(t.coeff);
        if (!acc.is_zero())
            throw InputError("module '" + lit.name +
                             "' does not satisfy the relations");
    }
    const std::size_t d = off(r);
    std::vector<Mat> action(alg->dim(), Mat(d, d, gf));
    for (std::size_t i = 0; i < alg->dim(); ++i) {
        const auto& word = (*words)[i];
        if (word.empty()) {
            std::size_t v = alg->src(i); // = tgt
            for (std::size_t k = 0; k < dimvec[v]; ++k)
                action[i](off(v) + k, off(v) + k) = 1;
        } else {
            Mat blockmat = word_product(word);
            action[i].set_block(off(alg->tgt(i)), off(alg->src(i)), blockmat);
        }
    }
    Module m = Module::from_graded(alg, std::move(dimvec), std::move(action));
    m.validate();
    return m;
}

std::string module_to_dsl(const Module& m, const std::string& name) {
    const auto& alg = m.algebra();
    const auto& quiver = alg->quiver();
    const auto& words = alg->basis_words();
    if (!quiver || !words)
        throw InputError("cannot serialize a module over a non-quiver algebra");
    std::ostringstream os;
    os << "module " << name << "\n";
    for (std::size_t v = 0; v < alg->vertex_count(); ++v)
        if (m.vertex_dim(v))
            os << "dim " << quiver->vertex_names[v] << " = " << m.vertex_dim(v)
               << "\n";
    for (std::size_t a = 0; a < quiver->arrows.size(); ++a) {
        // The arrow is a length-one basis word.
        std::size_t idx = SIZE_MAX;
        for (std::size_t i = 0; i < alg->dim(); ++i)
            if ((*words)[i].size() == 1 && (*words)[i][0] == a) idx = i;
        if (idx == SIZE_MAX) continue;
        Mat b = m.action_block(idx);
        if (b.is_zero()) continue;
        os << "map " << quiver->arrows[a].name << " = " << b.to_string() << "\n";
    }
    return os.str();
}

std::size_t hom_dim(const Module& m, const Module& n) {
    if (m.dim() == 0 || n.dim() == 0) return 0;
    const auto& alg = *m.algebra();
    assert(m.algebra() == n.algebra());
    const std::size_t r = alg.vertex_count();
    Gf gf = alg.field();
    std::vector<std::size_t> uoff(r + 1, 0);
    for (std::size_t v = 0; v < r; ++v)
        uoff[v + 1] = uoff[v] + n.vertex_dim(v) * m.vertex_dim(v);
    const std::size_t unknowns = uoff[r];
    if (unknowns == 0) return 0;

    std::vector<std::vector<std::uint32_t>> rows;
    for (std::size_t b : alg.radical()) {
        std::size_t s = alg.src(b), t = alg.tgt(b);
        Mat mb = m.action_block(b); // m_t x m_s
        Mat nb = n.action_block(b); // n_t x n_s
        // f_t * mb - nb * f_s = 0, entrywise (row in n_t, col in m_s).
        for (std::size_t i = 0; i < n.vertex_dim(t); ++i) {
            for (std::size_t j = 0; j < m.vertex_dim(s); ++j) {
                std::vector<std::uint32_t> row(unknowns, 0);
                for (std::size_t k = 0; k < m.vertex_dim(t); ++k) {
                    std::uint32_t c = mb(k, j);
                    if (!c) continue;
                    std::size_t idx = uoff[t] + i * m.vertex_dim(t) + k;
                    row[idx] = gf.add(row[idx], c);
                }
                for (std::size_t l = 0; l < n.vertex_dim(s); ++l) {
                    std::uint32_t c = nb(i, l);
                    if (!c) continue;
                    std::size_t idx = uoff[s] + l * m.vertex_dim(s) + j;
                    row[idx] = gf.sub(row[idx], c);
                }
                rows.push_back(std::move(row));
            }
        }
    }
    RowSpan span(unknowns, gf);
    for (auto& row : rows) span.add_row(std::move(row));
    return unknowns - span.dim();
}

std::vector<Morphism> hom_basis(const Module& m, const Module& n) {
    assert(m.algebra() == n.algebra());
    const auto& alg = *m.algebra();
    const std::size_t r = alg.vertex_count();
    Gf gf = alg.field();
    std::vector<std::size_t> uoff(r + 1, 0);
    for (std::size_t v = 0; v < r; ++v)
        uoff[v + 1] = uoff[v] + n.vertex_dim(v) * m.vertex_dim(v);
    const std::size_t unknowns = uoff[r];
    if (unknowns == 0) return {};

    Mat sys(0, unknowns, gf);
    std::vector<std::vector<std::int64_t>> rows;
    for (std::size_t b : alg.radical()) {
        std::size_t s = alg.src(b), t = alg.tgt(b);
        Mat mb = m.action_block(b);
        Mat nb = n.action_block(b);
        for (std::size_t i = 0; i < n.vertex_dim(t); ++i) {
            for (std::size_t j = 0; j < m.vertex_dim(s); ++j) {
                std::vector<std::int64_t> row(unknowns, 0);
                for (std::size_t k = 0; k < m.vertex_dim(t); ++k)
                    if (mb(k, j))
                        row[uoff[t] + i * m.vertex_dim(t) + k] += mb(k, j);
                for (std::size_t l = 0; l < n.vertex_dim(s); ++l)
                    if (nb(i, l))
                        row[uoff[s] + l * m.vertex_dim(s) + j] -= nb(i, l);
                rows.push_back(std::move(row));
            }
        }
    }
    Mat system = rows.empty() ? Mat(0, unknowns, gf) : Mat::from_rows(rows, gf);
    Mat kb = kernel_basis(system);

    std::vector<Morphism> out;
    for (std::size_t c = 0; c < kb.cols(); ++c) {
        std::vector<Mat> blocks;
        for (std::size_t v = 0; v < r; ++v) {
            Mat blk(n.vertex_dim(v), m.vertex_dim(v), gf);
            for (std::size_t i = 0; i < n.vertex_dim(v); ++i)
                for (std::size_t j = 0; j < m.vertex_dim(v); ++j)
                    blk(i, j) = kb(uoff[v] + i * m.vertex_dim(v) + j, c);
            blocks.push_back(std::move(blk));
        }
        out.emplace_back(m, n, std::move(blocks));
    }
    return out;
}

Module dual_module(const Module& m) {
    AlgebraPtr op = m.algebra()->opposite();
    std::vector<Mat> action;
    action.reserve(m.algebra()->dim());
    for (std::size_t i = 0; i < m.algebra()->dim(); ++i)
        action.push_back(m.action(i).transposed());
    return Module::from_graded(op, m.dimension_vector(), std::move(action));
}

Morphism dual_morphism(const Morphism& f) {
    Module ds = dual_module(f.target());
    Module dt = dual_module(f.source());
    std::vector<Mat> blocks;
    for (std::size_t v = 0; v < f.source().algebra()->vertex_count(); ++v)
        blocks.push_back(f.block(v).transposed());
    return Morphism(std::move(ds), std::move(dt), std::move(blocks));
}

SumResult direct_sum(const std::vector<Module>& parts) {
    if (parts.empty()) throw InputError("direct_sum needs at least one part");
    const AlgebraPtr& alg = parts[0].algebra();
    for (const Module& p : parts)
        if (p.algebra() != alg)
            throw InputError("direct_sum over mixed algebras");
    const std::size_t r = alg->vertex_count();
    Gf gf = alg->field();
    std::vector<std::size_t> dimvec(r, 0);
    for (const Module& p : parts)
        for (std::size_t v = 0; v < r; ++v) dimvec[v] += p.vertex_dim(v);
    std::vector<std::size_t> off = std::vector<std::size_t>(r + 1, 0);
    for (std::size_t v = 0; v < r; ++v) off[v + 1] = off[v] + dimvec[v];

    // part_off[k][v]: offset of part k inside the v-block of the sum.
    std::vector<std::vector<std::size_t>> part_off(parts.size(),
                                                   std::vector<std::size_t>(r, 0));
    for (std::size_t v = 0; v < r; ++v) {
        std::size_t acc = 0;
        for (std::size_t k = 0; k < parts.size(); ++k) {
            part_off[k][v] = acc;
            acc += parts[k].vertex_dim(v);
        }
    }

    const std::size_t d = off[r];
    std::vector<Mat> action(alg->dim(), Mat(d, d, gf));
    for (std::size_t i = 0; i < alg->dim(); ++i) {
        std::size_t s = alg->src(i), t = alg->tgt(i);
        for (std::size_t k = 0; k < parts.size(); ++k) {
            Mat blk = parts[k].action_block(i);
            action[i].set_block(off[t] + part_off[k][t], off[s] + part_off[k][s],
                                blk);
        }
    }
    Module sum = Module::from_graded(alg, dimvec, std::move(action));

    SumResult res{sum, {}, {}};
    for (std::size_t k = 0; k < parts.size(); ++k) {
        std::vector<Mat> inj, proj;
        for (std::size_t v = 0; v < r; ++v) {
            Mat in(sum.vertex_dim(v), parts[k].vertex_dim(v), gf);
            Mat pr(parts[k].vertex_dim(v), sum.vertex_dim(v), gf);
            for (std::size_t j = 0; j < parts[k].vertex_dim(v); ++j) {
                in(part_off[k][v] + j, j) = 1;
                pr(j, part_off[k][v] + j) = 1;
            }
            inj.push_back(std::move(in));
            proj.push_back(std::move(pr));
        }
        res.injections.emplace_back(parts[k], sum, std::move(inj));
        res.projections.emplace_back(sum, parts[k], std::move(proj));
    }
    return res;
}

SubmoduleResult submodule_from_vertex_bases(const Module& m,
                                            const std::vector<Mat>& vertex_bases) {
    const auto& alg = *m.algebra();
    const std::size_t r = alg.vertex_count();
    Gf gf = alg.field();
    std::vector<std::size_t> dimvec(r, 0);
    std::vector<ColumnSpan> spans;
    for (std::size_t v = 0; v < r; ++v) {
        assert(vertex_bases[v].rows() == m.vertex_dim(v));
        spans.emplace_back(vertex_bases[v]);
        dimvec[v] = spans[v].dim();
    }
    std::vector<std::size_t> off(r + 1, 0);
    for (std::size_t v = 0; v < r; ++v) off[v + 1] = off[v] + dimvec[v];
    const std::size_t d = off[r];
    std::vector<Mat> action(alg.dim(), Mat(d, d, gf));
    for (std::size_t i = 0; i < alg.dim(); ++i) {
        std::size_t s = alg.src(i), t = alg.tgt(i);
        if (dimvec[s] == 0 || (m.vertex_dim(t) == 0)) continue;
        Mat img = m.action_block(i) * spans[s].basis(); // m_t x sub_s
        Mat coords = spans[t].coordinates(img);          // sub_t x sub_s
        action[i].set_block(off[t], off[s], coords);
    }
    Module sub = Module::from_graded(m.algebra(), dimvec, std::move(action));
    std::vector<Mat> inc;
    for (std::size_t v = 0; v < r; ++v) inc.push_back(spans[v].basis());
    return {sub, Morphism(sub, m, std::move(inc))};
}

SubmoduleResult submodule_closure(const Module& m, const Mat& global_vectors) {
    const auto& alg = *m.algebra();
    Gf gf = alg.field();
    RowSpan span(m.dim(), gf);
    std::vector<Mat> frontier;
    for (std::size_t c = 0; c < global_vectors.cols(); ++c) {
        Mat v = global_vectors.col(c);
        std::vector<std::uint32_t> row(m.dim());
        for (std::size_t i = 0; i < m.dim(); ++i) row[i] = v(i, 0);
        if (span.add_row(std::move(row))) frontier.push_back(v);
    }
    while (!frontier.empty()) {
        std::vector<Mat> next;
        for (const Mat& v : frontier) {
            for (std::size_t i = 0; i < alg.dim(); ++i) {
                Mat w = m.action(i) * v;
                std::vector<std::uint32_t> row(m.dim());
                for (std::size_t k = 0; k < m.dim(); ++k) row[k] = w(k, 0);
                if (span.add_row(std::move(row))) next.push_back(w);
            }
        }
        frontier = std::move(next);
    }
    // Split per vertex: the closure is graded since it is stable under the
    // idempotent projections.
    std::vector<Mat> vertex_bases;
    for (std::size_t v = 0; v < alg.vertex_count(); ++v) {
        RowSpan vs(m.vertex_dim(v), gf);
        for (const auto& row : span.rows()) {
            std::vector<std::uint32_t> part(m.vertex_dim(v));
            for (std::size_t k = 0; k < m.vertex_dim(v); ++k)
                part[k] = row[m.offset(v) + k];
            vs.add_row(std::move(part));
        }
        Mat basis(m.vertex_dim(v), vs.dim(), gf);
        for (std::size_t c = 0; c < vs.dim(); ++c)
            for (std::size_t k = 0; k < m.vertex_dim(v); ++k)
                basis(k, c) = vs.rows()[c][k];
        vertex_bases.push_back(std::move(basis));
    }
    return submodule_from_vertex_bases(m, vertex_bases);
}

QuotientResult quotient_module(const Module& m,
                               const std::vector<Mat>& sub_vertex_bases) {
    const auto& alg = *m.algebra();
    const std::size_t r = alg.vertex_count();
    Gf gf = alg.field();
    // Per vertex: rref of the subspace as rows, pivots = eliminated
    // coordinates, free coordinates represent the quotient.
    std::vector<RowSpan> subs;
    std::vector<std::vector<std::size_t>> free_coords(r);
    std::vector<std::size_t> dimvec(r, 0);
    for (std::size_t v = 0; v < r; ++v) {
        RowSpan rs(m.vertex_dim(v), gf);
        const Mat& b = sub_vertex_bases[v];
        assert(b.rows() == m.vertex_dim(v));
        for (std::size_t c = 0; c < b.cols(); ++c) {
            std::vector<std::uint32_t> row(m.vertex_dim(v));
            for (std::size_t k = 0; k < m.vertex_dim(v); ++k) row[k] = b(k, c);
            rs.add_row(std::move(row));
        }
        std::vector<bool> is_pivot(m.vertex_dim(v), false);
        for (std::size_t p : rs.pivots()) is_pivot[p] = true;
        for (std::size_t k = 0; k < m.vertex_dim(v); ++k)
            if (!is_pivot[k]) free_coords[v].push_back(k);
        dimvec[v] = free_coords[v].size();
        subs.push_back(std::move(rs));
    }
    std::vector<std::size_t> off(r + 1, 0);
    for (std::size_t v = 0; v < r; ++v) off[v + 1] = off[v] + dimvec[v];

    // projection pi_v: reduce against the subspace rows, then read the free
    // coordinates; section sigma_v: unit vectors at the free coordinates.
    auto project = [&](std::size_t v, const Mat& x) {
        Mat out(dimvec[v], x.cols(), gf);
        for (std::size_t c = 0; c < x.cols(); ++c) {
            std::vector<std::uint32_t> row(m.vertex_dim(v));
            for (std::size_t k = 0; k < m.vertex_dim(v); ++k) row[k] = x(k, c);
            row = subs[v].reduce(std::move(row));
            for (std::size_t k = 0; k < dimvec[v]; ++k)
                out(k, c) = row[free_coords[v][k]];
        }
        return out;
    };

    const std::size_t d = off[r];
    std::vector<Mat> action(alg.dim(), Mat(d, d, gf));
    for (std::size_t i = 0; i < alg.dim(); ++i) {
        std::size_t s = alg.src(i), t = alg.tgt(i);
        if (dimvec[s] == 0 || dimvec[t] == 0) continue;
        Mat sect(m.vertex_dim(s), dimvec[s], gf);
        for (std::size_t k = 0; k < dimvec[s]; ++k) sect(free_coords[s][k], k) = 1;
        Mat blk = project(t, m.action_block(i) * sect);
        action[i].set_block(off[t], off[s], blk);
    }
    Module quot = Module::from_graded(m.algebra(), dimvec, std::move(action));

    std::vector<Mat> proj_blocks, sect_blocks;
    for (std::size_t v = 0; v < r; ++v) {
        proj_blocks.push_back(project(v, Mat::identity(m.vertex_dim(v), gf)));
        Mat sect(m.vertex_dim(v), dimvec[v], gf);
        for (std::size_t k = 0; k < dimvec[v]; ++k) sect(free_coords[v][k], k) = 1;
        sect_blocks.push_back(std::move(sect));
    }
    Morphism projection(m, quot, std::move(proj_blocks));
    Morphism section(quot, m, std::move(sect_blocks));
    return {quot, std::move(projection), std::move(section)};
}

KernelImageCokernel kernel_cokernel(const Morphism& f) {
    const auto& alg = *f.source().algebra();
    const std::size_t r = alg.vertex_count();
    std::vector<Mat> ker_bases, img_bases;
    for (std::size_t v = 0; v < r; ++v) {
        ker_bases.push_back(kernel_basis(f.block(v)));
        img_bases.push_back(column_space_basis(f.block(v)));
    }
    SubmoduleResult ker = submodule_from_vertex_bases(f.source(), ker_bases);
    SubmoduleResult img = submodule_from_vertex_bases(f.target(), img_bases);
    QuotientResult coker = quotient_module(f.target(), img_bases);

    // M -> im: coordinates of f(x) in the image basis.
    std::vector<Mat> onto_blocks;
    for (std::size_t v = 0; v < r; ++v) {
        ColumnSpan span(img_bases[v]);
        onto_blocks.push_back(span.coordinates(f.block(v)));
    }
    Morphism onto(f.source(), img.sub, std::move(onto_blocks));

    return {ker.sub,  ker.inclusion, img.sub,
            img.inclusion, std::move(onto), coker.quotient,
            coker.projection};
}

std::vector<Mat> radical_vertex_bases(const Module& m) {
    const auto& alg = *m.algebra();
    Gf gf = alg.field();
    std::vector<Mat> bases;
    for (std::size_t v = 0; v < alg.vertex_count(); ++v) {
        RowSpan rs(m.vertex_dim(v), gf);
        for (std::size_t b : alg.radical()) {
            if (alg.tgt(b) != v) continue;
            Mat blk = m.action_block(b); // m_v x m_{src}
            for (std::size_t c = 0; c < blk.cols(); ++c) {
                std::vector<std::uint32_t> row(m.vertex_dim(v));
                for (std::size_t k = 0; k < m.vertex_dim(v); ++k) row[k] = blk(k, c);
                rs.add_row(std::move(row));
            }
        }
        Mat basis(m.vertex_dim(v), rs.dim(), gf);
        for (std::size_t c = 0; c < rs.dim(); ++c)
            for (std::size_t k = 0; k < m.vertex_dim(v); ++k)
                basis(k, c) = rs.rows()[c][k];
        bases.push_back(std::move(basis));
    }
    return bases;
}

std::vector<Mat> top_complement(const Module& m) {
    const auto& alg = *m.algebra();
    Gf gf = alg.field();
    std::vector<Mat> rad = radical_vertex_bases(m);
    std::vector<Mat> out;
    for (std::size_t v = 0; v < alg.vertex_count(); ++v) {
        // Extend the radical basis to a basis of the whole block; the
        // added unit vectors lift the top.
        RowSpan rs(m.vertex_dim(v), gf);
        for (std::size_t c = 0; c < rad[v].cols(); ++c) {
            std::vector<std::uint32_t> row(m.vertex_dim(v));
            for (std::size_t k = 0; k < m.vertex_dim(v); ++k) row[k] = rad[v](k, c);
            rs.add_row(std::move(row));
        }
        std::vector<std::size_t> lift;
        for (std::size_t k = 0; k < m.vertex_dim(v); ++k)
            if (!rs.contains_unit(k)) {
                std::vector<std::uint32_t> u(m.vertex_dim(v), 0);
                u[k] = 1;
                if (rs.add_row(std::move(u))) lift.push_back(k);
            }
        Mat basis(m.vertex_dim(v), lift.size(), gf);
        for (std::size_t c = 0; c < lift.size(); ++c) basis(lift[c], c) = 1;
        out.push_back(std::move(basis));
    }
    return out;
}

} // namespace qhat
