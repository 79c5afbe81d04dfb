#pragma once

#include "gm4/structure.hpp"

#include <string>
#include <vector>

namespace gm4 {

// Line-oriented manifest (.gm):
//
//   gm4 1
//   block A
//     base orientable genus 0 boundary 3        (or: nonorientable genus K / nonorientable handles H crosscaps K)
//     orientation -                             (optional, + or -)
//     boundaries p q r                          (optional, default d1 d2 ...)
//     gen c1 [[1,1],[0,1]]                      (omitted generators map to I)
//   glue A.p B.p x=(1,0,0) y=(0,1,0) t=(0,0,-1)
//
// '#' starts a comment.

struct ParseError : Error {
    int line, column;
    ParseError(int l, int c, const std::string& msg)
        : Error("line " + std::to_string(l) + ", column " + std::to_string(c) + ": " + msg), line(l), column(c) {}
};

struct BlockDecl {
    std::string label;
    Surface surface;
    std::vector<std::string> boundary_labels;
    std::vector<Mat2> images; // generator order, identity filled in
    int orientation = 0;
    int line = 0;
};

struct GlueDecl {
    Endpoint source, target;
    Pi1Element x, y, t;
    int line = 0;
};

struct Manifest {
    int version = 1;
    std::vector<BlockDecl> blocks;
    std::vector<GlueDecl> glues;
};

Manifest parse_manifest(const std::string& text);
std::string serialize(const Manifest& m);

GraphStructure to_structure(const Manifest& m);
Manifest to_manifest(const GraphStructure& gs);

// read + parse + build
GraphStructure load_structure(const std::string& path);

} // namespace gm4
