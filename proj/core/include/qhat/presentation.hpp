// The bound-quiver input language and its compilation into a BasicAlgebra.
//
// Grammar (one declaration per line; '/' also separates declarations;
// '#' starts a comment):
//   algebra <ident> field <prime>      -- or `algebra <ident>` to reference
//   vertices <id>[,<id>...]            -- or  vertices <a>..<b>
//   arrow <ident> : <vertex> -> <vertex>
//   rel <term> { (+|-) [<coeff>*]<term> }   with <term> = <arrow>{*<arrow>}
//   module <ident> / dim <vertex> = <nat> / map <arrow> = [[row],...]
//
// Relation terms are written in traversal order: `alpha*beta` is the path
// that follows alpha first and then beta.
#pragma once

#include "qhat/algebra.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace qhat {

struct ParseError : InputError {
    ParseError(int line, int col, const std::string& msg)
        : InputError("line " + std::to_string(line) + ", col " +
                     std::to_string(col) + ": " + msg),
          line(line), col(col) {}
    int line, col;
};

struct Arrow {
    std::string name;
    std::size_t source, target; // indices into vertex list
};

struct RelationTerm {
    std::uint32_t coeff;
    std::vector<std::size_t> arrows; // arrow indices, traversal order
};

struct Relation {
    std::vector<RelationTerm> terms; // all parallel, length >= 2
    std::size_t source, target;
};

struct ModuleLiteral {
    std::string name;
    std::map<std::size_t, std::size_t> dims;  // vertex index -> dimension
    std::map<std::size_t, Mat> arrow_maps;    // arrow index -> matrix
};

struct QuiverSpec {
    std::string name;
    std::uint32_t p = 0; // 0 marks a reference header (no `field`)
    std::vector<std::string> vertex_names;
    std::vector<Arrow> arrows;
    std::vector<Relation> relations;
    std::vector<ModuleLiteral> modules;

    bool is_reference() const { return p == 0; }
    std::size_t vertex_index(const std::string& name, int line, int col) const;
    std::size_t arrow_index(const std::string& name, int line, int col) const;
};

QuiverSpec parse_spec(const std::string& text);

struct BuildOptions {
    std::size_t max_path_length = 64;
    std::size_t max_paths = 200000;
};

// Compiles the bound quiver into its path algebra modulo the relation
// ideal. Throws CapError when the ideal is not visibly admissible within
// the length cap.
AlgebraPtr build_algebra(const QuiverSpec& spec, const BuildOptions& opts = {});

} // namespace qhat
