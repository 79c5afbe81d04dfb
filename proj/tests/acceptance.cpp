// Acceptance run: one line per criterion, nonzero exit if any fails.

#include "support.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <unordered_set>

using namespace gm4;
using namespace support;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
    void fail(const std::string& why) {
        if (pass) detail = why;
        pass = false;
    }
};

std::vector<CorpusEntry> reduced_orientable(const std::vector<CorpusEntry>& all) {
    std::vector<CorpusEntry> out;
    for (const auto& e : all) {
        bool orientable = true;
        for (const auto& b : e.gs.blocks) orientable = orientable && b.surface().orientable();
        if (orientable && is_reduced(e.gs).reduced) out.push_back(e);
    }
    return out;
}

// structures after reduction, closed-base ones dropped
std::vector<CorpusEntry> reduced_corpus(const std::vector<CorpusEntry>& all) {
    std::vector<CorpusEntry> out;
    for (const auto& e : all) {
        try {
            out.push_back({e.name, reduce(e.gs)});
        } catch (const ReductionError&) {
        }
    }
    return out;
}

Outcome psi_calibration() {
    Outcome o;
    for (long n = -10; n <= 10; ++n)
        for (int s : {1, -1}) {
            Mat2 m = mat_T(n);
            if (s < 0) m = -m;
            if (psi(m) != n) o.fail("psi(" + to_string(m) + ") = " + to_string(psi(m)));
        }
    if (psi(Mat2::identity()) != 0 || psi(-Mat2::identity()) != 0) o.fail("psi(+-I) != 0");
    o.detail = o.pass ? "psi(+-(1 n;0 1)) = n for n in [-10,10], psi(+-I) = 0" : o.detail;
    return o;
}

Outcome signature_vanishing(const std::vector<CorpusEntry>& all) {
    Outcome o;
    auto ro = reduced_orientable(all);
    if (ro.size() < 5) o.fail("only " + std::to_string(ro.size()) + " reduced orientable corpus structures");
    for (const auto& e : ro) {
        Rational s = manifold_signature(e.gs);
        if (s != 0) o.fail(e.name + ": sigma = " + to_string(s));
    }
    if (o.pass) o.detail = "sigma = 0 on " + std::to_string(ro.size()) + " reduced orientable-base structures";
    return o;
}

Outcome euler_zero(const std::vector<CorpusEntry>& all) {
    Outcome o;
    size_t n = 0;
    for (const auto& e : all) {
        if (!validate_structure(e.gs).empty()) continue;
        ++n;
        try {
            long x = euler_characteristic(e.gs);
            if (x != 0) o.fail(e.name + ": chi = " + std::to_string(x));
        } catch (const std::exception& ex) {
            o.fail(e.name + ": " + ex.what());
        }
    }
    if (o.pass) o.detail = "chi = 0 on all " + std::to_string(n) + " valid corpus structures";
    return o;
}

Outcome cocycle_suite() {
    Outcome o;
    std::mt19937_64 rng(20261018);
    for (int i = 0; i < 1000; ++i) {
        Mat2 a = random_sl(rng), b = random_sl(rng), c = random_sl(rng);
        if (meyer_cocycle(a, b) + meyer_cocycle(a * b, c) != meyer_cocycle(a, b * c) + meyer_cocycle(b, c))
            o.fail("cocycle identity fails at " + to_string(a) + ", " + to_string(b) + ", " + to_string(c));
        if (psi(a * b) != psi(a) + psi(b) - 3 * meyer_cocycle(a, b)) o.fail("coboundary fails at " + to_string(a) + ", " + to_string(b));
    }
    if (o.pass) o.detail = "cocycle identity and Psi coboundary on 1000 random triples/pairs, entries <= 10";
    return o;
}

Outcome conjugacy_oracle() {
    Outcome o;
    auto ball = word_ball(12);
    std::vector<M4> cinv;
    cinv.reserve(ball.size());
    for (const auto& c : ball) cinv.push_back(inv(c));
    auto box = sl2z_box(3);
    std::map<M4, size_t> index;
    for (size_t i = 0; i < box.size(); ++i) index[to_m4(box[i])] = i;
    size_t pairs = 0;
    for (size_t i = 0; i < box.size(); ++i) {
        // everything reachable from box[i] by a short conjugator, restricted to the box
        std::vector<char> reach(box.size(), 0);
        M4 a = to_m4(box[i]);
        for (size_t k = 0; k < ball.size(); ++k) {
            M4 b = mul(mul(ball[k], a), cinv[k]);
            if (std::abs(b[0]) > 3 || std::abs(b[1]) > 3 || std::abs(b[2]) > 3 || std::abs(b[3]) > 3) continue;
            reach[index.at(b)] = 1;
        }
        for (size_t j = 0; j < box.size(); ++j) {
            ++pairs;
            auto r = conjugate_in(box[i], box[j], Ambient::SL2Z);
            if (r.conjugate != static_cast<bool>(reach[j]))
                o.fail("disagree on " + to_string(box[i]) + " vs " + to_string(box[j]));
            if (r.conjugate && (r.witness->det() != 1 || conj(*r.witness, box[i]) != box[j]))
                o.fail("bad witness for " + to_string(box[i]) + " vs " + to_string(box[j]));
        }
    }
    if (o.pass)
        o.detail = "agrees with brute force (" + std::to_string(ball.size()) + " conjugators) on " + std::to_string(pairs) + " pairs";
    return o;
}

Outcome fibration_uniqueness() {
    Outcome o;
    size_t n = 0;
    for (const auto& m : sl2z_box(5)) {
        ++n;
        bool singular = (m - Mat2::identity()).det() == 0;
        if (fibration_unique(TorusBundle{m}) == singular) o.fail(to_string(m));
    }
    if (o.pass) o.detail = "fibration_unique = (det(phi - I) != 0) on all " + std::to_string(n) + " SL matrices with entries in [-5,5]";
    return o;
}

Outcome parabolicity(const std::vector<CorpusEntry>& all) {
    Outcome o;
    size_t classes = 0, structures = 0;
    auto check = [&](const std::string& name, const GraphStructure& gs) {
        ++structures;
        for (const auto& e : gs.edges) {
            ConjClass c = classify(endpoint_monodromy(gs, e.source));
            ++classes;
            if (!c.is_unipotent()) o.fail(name + ": " + c.to_string());
        }
        if (!invariant_report(gs).findings.empty()) o.fail(name + ": report has findings");
    };
    for (const auto& e : all)
        if (is_reduced(e.gs).reduced) check(e.name, e.gs);
    for (const auto& e : reduced_corpus(all)) check(e.name + " (reduced)", e.gs);
    if (o.pass)
        o.detail = std::to_string(classes) + " decomposing classes over " + std::to_string(structures) +
                   " reduced structures, all conjugate to (1 n;0 1)";
    return o;
}

Outcome pi1_axioms() {
    Outcome o;
    std::vector<Mat2> ambients{Mat2::identity(), mat_T(1),          mat_T(-3),         mat_S(),
                               Mat2(0L, -1L, 1L, 1L), Mat2(2L, 1L, 1L, 1L), -Mat2::identity(), Mat2::diag(1, -1),
                               Mat2(0L, 1L, 1L, 0L),  Mat2(5L, 2L, 2L, 1L)};
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<long> coord(-5, 5);
    auto rnd = [&] { return Pi1Element(coord(rng), coord(rng), coord(rng)); };
    const Pi1Element id(0L, 0L, 0L);
    for (const auto& phi : ambients) {
        TorusBundle m{phi};
        for (int i = 0; i < 1000; ++i) {
            Pi1Element a = rnd(), b = rnd(), c = rnd();
            if (pi1_mul(m, pi1_mul(m, a, b), c) != pi1_mul(m, a, pi1_mul(m, b, c))) o.fail("associativity, phi = " + to_string(phi));
            if (pi1_mul(m, a, id) != a || pi1_mul(m, id, a) != a) o.fail("identity, phi = " + to_string(phi));
            if (pi1_mul(m, a, pi1_inv(m, a)) != id || pi1_mul(m, pi1_inv(m, a), a) != id) o.fail("inverse, phi = " + to_string(phi));
        }
    }
    if (o.pass) o.detail = "associativity, identity, inverse on 1000 random triples for each of " + std::to_string(ambients.size()) + " monodromies";
    return o;
}

Outcome reduction(const std::vector<CorpusEntry>& all) {
    Outcome o;
    size_t n = 0;
    for (const auto& e : all) {
        GraphStructure r;
        try {
            r = reduce(e.gs);
        } catch (const ReductionError&) {
            continue;
        }
        ++n;
        if (!validate_structure(r).empty()) o.fail(e.name + ": reduced structure invalid");
        if (!is_reduced(r).reduced) o.fail(e.name + ": not reduced");
        if (serialize(to_manifest(reduce(r))) != serialize(to_manifest(r))) o.fail(e.name + ": not idempotent");
        auto before = invariant_report(e.gs), after = invariant_report(r);
        if (before.sigma != after.sigma) o.fail(e.name + ": sigma changed");
        if (before.euler != after.euler) o.fail(e.name + ": euler changed");
        if (before.h1 != after.h1) o.fail(e.name + ": h1 changed " + before.h1.to_string() + " -> " + after.h1.to_string());
    }
    auto two = reduce(corpus_structure("two_pants_identity"));
    if (two.blocks.size() != 1 || !(two.blocks[0].surface() == Surface::orientable_surface(0, 4)) || two.blocks[0].surface().euler() != -2)
        o.fail("two-pants identity merge did not give one 4-holed sphere with chi = -2");
    if (o.pass)
        o.detail = "idempotent and sigma/chi/H1 preserving on " + std::to_string(n) +
                   " reducible structures; two-pants merge gives the 4-holed sphere, chi = -2";
    return o;
}

Outcome comparison(const std::vector<CorpusEntry>& all) {
    Outcome o;
    auto red = reduced_corpus(all);
    size_t yes = 0, no = 0;
    for (size_t i = 0; i < red.size(); ++i) {
        for (uint64_t seed : {1u, 2u}) {
            auto rl = relabel(red[i].gs, seed);
            for (int bound : {1, 2, 3}) {
                auto c = isomorphic_reduced(red[i].gs, rl, bound);
                if (c.answer != Comparison::Yes) o.fail(red[i].name + " vs relabel: " + c.to_text());
                else ++yes;
            }
        }
        for (size_t j = 0; j < red.size(); ++j) {
            if (i == j) continue;
            auto r1 = invariant_report(red[i].gs), r2 = invariant_report(red[j].gs);
            std::string sep = r1.first_difference(r2);
            std::vector<Comparison::Answer> answers;
            for (int bound : {1, 2, 3}) answers.push_back(isomorphic_reduced(red[i].gs, red[j].gs, bound).answer);
            if (!sep.empty()) {
                for (auto a : answers)
                    if (a != Comparison::No) o.fail(red[i].name + " vs " + red[j].name + ": separated by " + sep + " but not No");
                ++no;
            }
            // Yes/No are final
            bool saw_yes = false, saw_no = false;
            for (auto a : answers) {
                saw_yes = saw_yes || a == Comparison::Yes;
                saw_no = saw_no || a == Comparison::No;
            }
            if (saw_yes && saw_no) o.fail(red[i].name + " vs " + red[j].name + ": Yes and No under different bounds");
        }
    }
    if (o.pass)
        o.detail = std::to_string(yes) + " relabel comparisons Yes, " + std::to_string(no) +
                   " separated pairs No, stable over bounds 1..3";
    return o;
}

} // namespace

int main() {
    auto all = corpus();
    std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"psi calibration", psi_calibration},
        {"signature vanishing", [&] { return signature_vanishing(all); }},
        {"euler characteristic", [&] { return euler_zero(all); }},
        {"cocycle/quasimorphism", cocycle_suite},
        {"conjugacy oracle", conjugacy_oracle},
        {"fibration uniqueness", fibration_uniqueness},
        {"reduced parabolicity", [&] { return parabolicity(all); }},
        {"pi1 group axioms", pi1_axioms},
        {"reduction", [&] { return reduction(all); }},
        {"comparison soundness", [&] { return comparison(all); }},
    };
    int failed = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("criterion %2zu %s: %s (%s; %.1fs)\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(), o.detail.c_str(), secs);
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
