#include "gm4/kernels.hpp"
#include "gm4/meyer.hpp"

#include <exception>
#include <map>

namespace gm4 {

namespace {

template <class Out, class F>
std::vector<Out> map_parallel(const std::vector<Mat2>& ms, F f) {
    const long n = static_cast<long>(ms.size());
    std::vector<Out> out(ms.size());
    std::vector<std::exception_ptr> errs(ms.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (long i = 0; i < n; ++i) {
        try {
            out[i] = f(ms[i]);
        } catch (...) {
            errs[i] = std::current_exception();
        }
    }
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
    return out;
}

template <class Out, class F>
std::vector<Out> map_serial(const std::vector<Mat2>& ms, F f) {
    std::vector<Out> out;
    out.reserve(ms.size());
    for (const auto& m : ms) out.push_back(f(m));
    return out;
}

std::string key_of(const Mat2& m, Ambient ambient) {
    if (ambient == Ambient::GL2Z) return gl_class_key(m);
    return classify(m).to_string();
}

std::vector<int> number_keys(const std::vector<std::string>& keys) {
    std::map<std::string, int> ids;
    std::vector<int> out;
    out.reserve(keys.size());
    for (const auto& k : keys) {
        auto it = ids.try_emplace(k, static_cast<int>(ids.size())).first;
        out.push_back(it->second);
    }
    return out;
}

} // namespace

std::vector<ConjClass> classify_batch(const std::vector<Mat2>& ms) {
    return map_parallel<ConjClass>(ms, [](const Mat2& m) { return classify(m); });
}

std::vector<ConjClass> classify_batch_serial(const std::vector<Mat2>& ms) {
    return map_serial<ConjClass>(ms, [](const Mat2& m) { return classify(m); });
}

std::vector<Rational> psi_batch(const std::vector<Mat2>& ms) {
    return map_parallel<Rational>(ms, [](const Mat2& m) { return psi(m); });
}

std::vector<Rational> psi_batch_serial(const std::vector<Mat2>& ms) {
    return map_serial<Rational>(ms, [](const Mat2& m) { return psi(m); });
}

// keys are computed in parallel, numbering stays serial so ids match the reference
std::vector<int> conjugacy_partition(const std::vector<Mat2>& ms, Ambient ambient) {
    return number_keys(map_parallel<std::string>(ms, [ambient](const Mat2& m) { return key_of(m, ambient); }));
}

std::vector<int> conjugacy_partition_serial(const std::vector<Mat2>& ms, Ambient ambient) {
    return number_keys(map_serial<std::string>(ms, [ambient](const Mat2& m) { return key_of(m, ambient); }));
}

std::vector<Mat2> sl2z_box(long bound) {
    std::vector<Mat2> out;
    for (long a = -bound; a <= bound; ++a)
        for (long b = -bound; b <= bound; ++b)
            for (long c = -bound; c <= bound; ++c)
                for (long d = -bound; d <= bound; ++d)
                    if (a * d - b * c == 1) out.push_back(Mat2(a, b, c, d));
    return out;
}

} // namespace gm4
