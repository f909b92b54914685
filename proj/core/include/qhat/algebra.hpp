// Split basic finite-dimensional algebras over GF(p), given by a basis
// adapted to the Peirce decomposition and to radical + idempotents.
#pragma once

#include "qhat/mat.hpp"

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace qhat {

struct QuiverSpec; // presentation.hpp

class BasicAlgebra;
using AlgebraPtr = std::shared_ptr<const BasicAlgebra>;

// Invariants, checked by validate():
//  - the listed idempotents are orthogonal, idempotent, and sum to 1;
//  - every basis element b satisfies e_{tgt(b)} * b * e_{src(b)} = b;
//  - basis indices split exactly into idempotents and radical elements;
//  - the radical spans a nilpotent two-sided ideal;
//  - multiplication is associative (all pairs when small, sampled above).
class BasicAlgebra : public std::enable_shared_from_this<BasicAlgebra> {
public:
    struct Data {
        std::string id;
        Gf field;
        std::vector<std::string> labels;       // one per basis element
        std::vector<Mat> left_mul;             // left_mul[i].col(j) = b_i * b_j
        std::vector<std::size_t> idempotents;  // basis indices of e_1..e_r
        std::vector<std::size_t> radical;      // basis indices of rad basis
        std::vector<std::size_t> src, tgt;     // Peirce position, in [0, r)
        std::vector<std::string> vertex_names; // one per idempotent
        std::shared_ptr<const QuiverSpec> quiver; // optional origin
        // For quiver-built algebras: the arrow word of each basis element
        // in traversal order (empty word = trivial path).
        std::optional<std::vector<std::vector<std::size_t>>> basis_words;
    };

    static AlgebraPtr create(Data data); // validates, throws InputError

    const std::string& id() const { return d_.id; }
    const Gf& field() const { return d_.field; }
    std::size_t dim() const { return d_.labels.size(); }
    std::size_t vertex_count() const { return d_.idempotents.size(); }
    const std::vector<std::string>& labels() const { return d_.labels; }
    const std::string& label(std::size_t i) const { return d_.labels[i]; }
    const std::vector<std::size_t>& idempotents() const { return d_.idempotents; }
    const std::vector<std::size_t>& radical() const { return d_.radical; }
    std::size_t src(std::size_t i) const { return d_.src[i]; }
    std::size_t tgt(std::size_t i) const { return d_.tgt[i]; }
    const std::string& vertex_name(std::size_t v) const { return d_.vertex_names[v]; }
    const std::shared_ptr<const QuiverSpec>& quiver() const { return d_.quiver; }
    const std::optional<std::vector<std::vector<std::size_t>>>& basis_words() const {
        return d_.basis_words;
    }

    // Coordinates of b_i * b_j as a column vector.
    Mat mul_basis(std::size_t i, std::size_t j) const {
        return d_.left_mul[i].col(j);
    }
    const Mat& left_mul(std::size_t i) const { return d_.left_mul[i]; }
    // Product of two coordinate columns.
    Mat mul(const Mat& x, const Mat& y) const;
    Mat unit() const; // coordinates of 1 = sum of idempotents

    bool is_idempotent_index(std::size_t i) const;

    // The opposite algebra; cached so opposite(opposite(A)) is A itself.
    AlgebraPtr opposite() const;

    // Structural equality (same table entries); used in tests.
    bool same_structure(const BasicAlgebra& o) const;

private:
    explicit BasicAlgebra(Data d) : d_(std::move(d)) {}
    void validate() const;

    Data d_;
    mutable std::mutex op_mutex_;
    mutable std::weak_ptr<const BasicAlgebra> op_cache_;
};

} // namespace qhat
