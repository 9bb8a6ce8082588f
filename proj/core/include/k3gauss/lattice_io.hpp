#pragma once

// Structured-text lattice files and basis-label class expressions.
//
// Lattice file, one document per file:
//     # comments and blank lines allowed
//     name: rank5(3,2,2,2,2)
//     rank: 5
//     gram: 6 0 0 0 0  0 -4 0 0 0  0 0 -4 0 0  0 0 0 -4 0  0 0 0 0 -4
//     basis_labels: D L R S T
// `gram` lists rank^2 integers row-major and may continue over following
// indented lines. Violated lattice invariants are rejected with a message
// naming the invariant.
//
// Class expressions: either comma-separated coordinates ("9,6,1,0,0") or a
// signed combination of basis labels ("9D+6L+R", "D+L", "-2T").

#include <string>

#include "k3gauss/lattice.hpp"

namespace k3gauss {

PicardLattice parse_lattice_text(const std::string& text);
PicardLattice load_lattice_file(const std::string& path);
std::string render_lattice(const PicardLattice& lat);

DivisorClass parse_class_expr(const PicardLattice& lat, const std::string& expr);
std::string class_to_expr(const PicardLattice& lat, const DivisorClass& cls);

// 64-bit FNV-1a content fingerprint, hex; used by run manifests.
std::string fnv1a64_hex(const std::string& data);

}  // namespace k3gauss
