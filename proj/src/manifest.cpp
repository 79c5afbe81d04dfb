#include "gm4/manifest.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace gm4 {

namespace {

struct Token {
    std::string text;
    int col;
};

// whitespace separated; brackets and parentheses group (spaces allowed inside)
std::vector<Token> tokenize(const std::string& line, int lineno) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        if (line[i] == '#') break;
        size_t start = i;
        int depth = 0;
        std::string tok;
        while (i < line.size()) {
            char ch = line[i];
            if (ch == '[' || ch == '(') ++depth;
            if (ch == ']' || ch == ')') --depth;
            if (depth < 0) throw ParseError(lineno, static_cast<int>(i) + 1, std::string("unbalanced '") + ch + "'");
            if (depth == 0 && (std::isspace(static_cast<unsigned char>(ch)) || ch == '#')) break;
            if (!std::isspace(static_cast<unsigned char>(ch))) tok += ch;
            ++i;
        }
        if (depth != 0) throw ParseError(lineno, static_cast<int>(start) + 1, "unterminated bracket in '" + tok + "'");
        out.push_back({tok, static_cast<int>(start) + 1});
    }
    return out;
}

bool is_label(const std::string& s) {
    if (s.empty()) return false;
    for (char ch : s)
        if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_') return false;
    return true;
}

int parse_count(const Token& t, int line) {
    if (t.text.empty() || t.text.size() > 6) throw ParseError(line, t.col, "expected a small non-negative integer, got '" + t.text + "'");
    for (char ch : t.text)
        if (!std::isdigit(static_cast<unsigned char>(ch)))
            throw ParseError(line, t.col, "expected a non-negative integer, got '" + t.text + "'");
    return std::stoi(t.text);
}

Int parse_int(const std::string& s, int line, int col) {
    std::string body = s;
    if (!body.empty() && (body[0] == '-' || body[0] == '+')) body = body.substr(1);
    if (body.empty()) throw ParseError(line, col, "expected integer, got '" + s + "'");
    for (char ch : body)
        if (!std::isdigit(static_cast<unsigned char>(ch))) throw ParseError(line, col, "expected integer, got '" + s + "'");
    return Int(s[0] == '+' ? s.substr(1) : s);
}

std::vector<std::string> split_list(const std::string& inner) {
    std::vector<std::string> parts;
    std::string cur;
    int depth = 0;
    for (char ch : inner) {
        if (ch == '[' || ch == '(') ++depth;
        if (ch == ']' || ch == ')') --depth;
        if (ch == ',' && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    return parts;
}

Mat2 parse_matrix(const Token& t, int line) {
    const std::string& s = t.text;
    if (s.size() < 2 || s.front() != '[' || s.back() != ']') throw ParseError(line, t.col, "expected matrix [[a,b],[c,d]], got '" + s + "'");
    auto rows = split_list(s.substr(1, s.size() - 2));
    if (rows.size() != 2) throw ParseError(line, t.col, "arity mismatch: matrix needs 2 rows, got " + std::to_string(rows.size()));
    Int e[4];
    for (int r = 0; r < 2; ++r) {
        const std::string& row = rows[r];
        if (row.size() < 2 || row.front() != '[' || row.back() != ']') throw ParseError(line, t.col, "expected row [a,b], got '" + row + "'");
        auto cells = split_list(row.substr(1, row.size() - 2));
        if (cells.size() != 2) throw ParseError(line, t.col, "arity mismatch: matrix row needs 2 entries, got " + std::to_string(cells.size()));
        for (int c = 0; c < 2; ++c) e[2 * r + c] = parse_int(cells[c], line, t.col);
    }
    Mat2 m(e[0], e[1], e[2], e[3]);
    Int d = m.det();
    if (d != 1 && d != -1) throw ParseError(line, t.col, "matrix " + to_string(m) + ": determinant " + d.get_str() + ", not unimodular");
    return m;
}

Pi1Element parse_triple(const std::string& s, int line, int col) {
    if (s.size() < 2 || s.front() != '(' || s.back() != ')') throw ParseError(line, col, "expected triple (a,b,k), got '" + s + "'");
    auto cells = split_list(s.substr(1, s.size() - 2));
    if (cells.size() != 3) throw ParseError(line, col, "arity mismatch: triple needs 3 entries, got " + std::to_string(cells.size()));
    return {parse_int(cells[0], line, col), parse_int(cells[1], line, col), parse_int(cells[2], line, col)};
}

Endpoint parse_endpoint(const Token& t, int line) {
    auto dot = t.text.find('.');
    if (dot == std::string::npos) throw ParseError(line, t.col, "expected <block>.<boundary>, got '" + t.text + "'");
    Endpoint e{t.text.substr(0, dot), t.text.substr(dot + 1)};
    if (!is_label(e.block) || !is_label(e.boundary)) throw ParseError(line, t.col, "bad endpoint '" + t.text + "'");
    return e;
}

struct PendingGen {
    std::string name;
    Mat2 m;
    int line, col;
};

struct PendingBlock {
    BlockDecl decl;
    bool has_base = false, has_labels = false, has_orientation = false;
    std::vector<PendingGen> gens;
};

void finish_block(PendingBlock& pb, std::vector<BlockDecl>& out) {
    BlockDecl& d = pb.decl;
    if (!pb.has_base) throw ParseError(d.line, 1, "block " + d.label + " has no base line");
    if (d.surface.boundaries < 1) throw ParseError(d.line, 1, "block " + d.label + ": base must have at least one boundary component");
    if (!pb.has_labels)
        for (int i = 1; i <= d.surface.boundaries; ++i) d.boundary_labels.push_back("d" + std::to_string(i));
    auto names = d.surface.generator_names();
    d.images.assign(names.size(), Mat2::identity());
    std::set<std::string> seen;
    for (const auto& g : pb.gens) {
        size_t k = 0;
        while (k < names.size() && names[k] != g.name) ++k;
        if (k == names.size()) throw ParseError(g.line, g.col, "unknown generator '" + g.name + "' for base " + d.surface.type_name());
        if (!seen.insert(g.name).second) throw ParseError(g.line, g.col, "generator '" + g.name + "' given twice");
        d.images[k] = g.m;
    }
    out.push_back(d);
}

} // namespace

Manifest parse_manifest(const std::string& text) {
    Manifest m;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    bool have_version = false;
    std::optional<PendingBlock> cur;
    while (std::getline(in, raw)) {
        ++lineno;
        auto toks = tokenize(raw, lineno);
        if (toks.empty()) continue;
        const std::string& kw = toks[0].text;
        auto need = [&](size_t n) {
            if (toks.size() != n)
                throw ParseError(lineno, toks[0].col, "arity mismatch: '" + kw + "' expects " + std::to_string(n - 1) + " arguments, got " +
                                                          std::to_string(toks.size() - 1));
        };
        if (!have_version) {
            if (kw != "gm4" || toks.size() != 2 || toks[1].text != "1") throw ParseError(lineno, toks[0].col, "expected version line 'gm4 1'");
            have_version = true;
            continue;
        }
        if (kw == "block") {
            need(2);
            if (!is_label(toks[1].text)) throw ParseError(lineno, toks[1].col, "bad block label '" + toks[1].text + "'");
            if (cur) finish_block(*cur, m.blocks);
            cur = PendingBlock{};
            cur->decl.label = toks[1].text;
            cur->decl.line = lineno;
            continue;
        }
        if (kw == "glue") {
            if (cur) {
                finish_block(*cur, m.blocks);
                cur.reset();
            }
            need(6);
            GlueDecl g;
            g.line = lineno;
            g.source = parse_endpoint(toks[1], lineno);
            g.target = parse_endpoint(toks[2], lineno);
            const char* names[3] = {"x=", "y=", "t="};
            Pi1Element* dst[3] = {&g.x, &g.y, &g.t};
            for (int i = 0; i < 3; ++i) {
                const Token& t = toks[3 + i];
                if (t.text.rfind(names[i], 0) != 0) throw ParseError(lineno, t.col, std::string("expected ") + names[i] + "(a,b,k), got '" + t.text + "'");
                *dst[i] = parse_triple(t.text.substr(2), lineno, t.col);
            }
            m.glues.push_back(g);
            continue;
        }
        if (!cur) throw ParseError(lineno, toks[0].col, "unexpected '" + kw + "' outside a block");
        BlockDecl& d = cur->decl;
        if (kw == "base") {
            if (cur->has_base) throw ParseError(lineno, toks[0].col, "base given twice");
            cur->has_base = true;
            if (toks.size() == 6 && toks[1].text == "orientable" && toks[2].text == "genus" && toks[4].text == "boundary") {
                d.surface = Surface::orientable_surface(parse_count(toks[3], lineno), parse_count(toks[5], lineno));
            } else if (toks.size() == 6 && toks[1].text == "nonorientable" && toks[2].text == "genus" && toks[4].text == "boundary") {
                int k = parse_count(toks[3], lineno);
                if (k < 1) throw ParseError(lineno, toks[3].col, "nonorientable genus must be at least 1");
                d.surface = Surface::nonorientable_surface(k, parse_count(toks[5], lineno));
            } else if (toks.size() == 8 && toks[1].text == "nonorientable" && toks[2].text == "handles" && toks[4].text == "crosscaps" &&
                       toks[6].text == "boundary") {
                int h = parse_count(toks[3], lineno), k = parse_count(toks[5], lineno);
                if (k < 1) throw ParseError(lineno, toks[5].col, "nonorientable base needs at least one crosscap");
                d.surface = Surface{h, k, parse_count(toks[7], lineno)};
            } else {
                throw ParseError(lineno, toks[0].col, "expected 'base orientable genus G boundary B', 'base nonorientable genus K boundary B' "
                                                      "or 'base nonorientable handles H crosscaps K boundary B'");
            }
        } else if (kw == "orientation") {
            need(2);
            if (cur->has_orientation) throw ParseError(lineno, toks[0].col, "orientation given twice");
            cur->has_orientation = true;
            if (toks[1].text == "+") d.orientation = 1;
            else if (toks[1].text == "-") d.orientation = -1;
            else throw ParseError(lineno, toks[1].col, "orientation must be + or -");
        } else if (kw == "boundaries") {
            if (cur->has_labels) throw ParseError(lineno, toks[0].col, "boundaries given twice");
            cur->has_labels = true;
            for (size_t i = 1; i < toks.size(); ++i) {
                if (!is_label(toks[i].text)) throw ParseError(lineno, toks[i].col, "bad boundary label '" + toks[i].text + "'");
                d.boundary_labels.push_back(toks[i].text);
            }
        } else if (kw == "gen") {
            need(3);
            cur->gens.push_back({toks[1].text, parse_matrix(toks[2], lineno), lineno, toks[1].col});
        } else {
            throw ParseError(lineno, toks[0].col, "unknown keyword '" + kw + "'");
        }
    }
    if (!have_version) throw ParseError(lineno + 1, 1, "empty manifest: expected version line 'gm4 1'");
    if (cur) finish_block(*cur, m.blocks);

    // semantic checks that need every block
    std::map<std::string, const BlockDecl*> by_label;
    for (const auto& b : m.blocks) {
        if (by_label.count(b.label)) throw ParseError(b.line, 1, "duplicate block label '" + b.label + "'");
        by_label[b.label] = &b;
    }
    for (const auto& g : m.glues)
        for (const Endpoint* ep : {&g.source, &g.target}) {
            auto it = by_label.find(ep->block);
            bool ok = it != by_label.end();
            if (ok) {
                const auto& ls = it->second->boundary_labels;
                ok = std::find(ls.begin(), ls.end(), ep->boundary) != ls.end();
            }
            if (!ok) throw ParseError(g.line, 1, "unknown boundary label '" + ep->to_string() + "'");
        }
    return m;
}

std::string serialize(const Manifest& m) {
    std::ostringstream os;
    os << "gm4 " << m.version << "\n";
    for (const auto& b : m.blocks) {
        os << "block " << b.label << "\n";
        const Surface& s = b.surface;
        if (s.orientable()) os << "  base orientable genus " << s.handles << " boundary " << s.boundaries << "\n";
        else if (s.handles == 0) os << "  base nonorientable genus " << s.crosscaps << " boundary " << s.boundaries << "\n";
        else os << "  base nonorientable handles " << s.handles << " crosscaps " << s.crosscaps << " boundary " << s.boundaries << "\n";
        if (b.orientation != 0) os << "  orientation " << (b.orientation > 0 ? "+" : "-") << "\n";
        os << "  boundaries";
        for (const auto& l : b.boundary_labels) os << " " << l;
        os << "\n";
        auto names = s.generator_names();
        for (size_t i = 0; i < names.size(); ++i) os << "  gen " << names[i] << " " << to_string(b.images[i]) << "\n";
    }
    for (const auto& g : m.glues)
        os << "glue " << g.source.to_string() << " " << g.target.to_string() << " x=" << to_string(g.x) << " y=" << to_string(g.y)
           << " t=" << to_string(g.t) << "\n";
    return os.str();
}

GraphStructure to_structure(const Manifest& m) {
    GraphStructure gs;
    for (const auto& d : m.blocks) gs.blocks.push_back(Block{d.label, MonodromyRep{d.surface, d.images}, d.boundary_labels, d.orientation});
    for (const auto& g : m.glues) {
        Edge e{g.source, g.target, {}};
        try {
            e.iso.source.phi = endpoint_monodromy(gs, g.source);
            e.iso.target.phi = endpoint_monodromy(gs, g.target);
        } catch (const Error& ex) {
            throw ParseError(g.line, 1, ex.what());
        }
        e.iso.x = g.x;
        e.iso.y = g.y;
        e.iso.t = g.t;
        gs.edges.push_back(e);
    }
    return gs;
}

Manifest to_manifest(const GraphStructure& gs) {
    Manifest m;
    for (const auto& b : gs.blocks) m.blocks.push_back(BlockDecl{b.label, b.surface(), b.boundary_labels, b.rep.images, b.orientation, 0});
    for (const auto& e : gs.edges) m.glues.push_back(GlueDecl{e.source, e.target, e.iso.x, e.iso.y, e.iso.t, 0});
    return m;
}

GraphStructure load_structure(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return to_structure(parse_manifest(ss.str()));
}

} // namespace gm4
