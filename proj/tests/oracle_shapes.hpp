// Independent partition oracle for shape enumeration.  Re-transcribes the
// capacity tables and the admissibility rules, then enumerates admissible
// multisets with a single flat recursion over a combined candidate list (no
// tube/non-tube split, no shared code with enumerate_shapes).  Shapes are
// compared as sets of serialized keys with string-sorted entries, so the
// comparison does not depend on either side's canonical ordering.
//
// Framework-free: shared between the unit tests and the acceptance gate.

#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "tighthom/shapes.hpp"

namespace shape_oracle {

inline long oracle_spin_unit(long r) {
    return (r % 2 != 0) ? (1L << ((r - 1) / 2)) : (1L << (r / 2 - 1));
}

struct OracleItem {
    std::string tag;   // matches ShapeEntry::str() without multiplicity
    long cap;          // capacity consumed per copy
    long side;         // q-side consumed per copy (su(m,n) targets)
    bool odd = false;  // occupies the odd block of so*(4p+2), at most one copy
};

inline std::string oracle_tag(const std::string& head, long a, long b = -1) {
    std::string s = head + "(" + std::to_string(a);
    if (b >= 0) s += "," + std::to_string(b);
    return s + ")";
}

inline std::vector<OracleItem> oracle_items(const tighthom::AlgebraDescriptor& target) {
    using tighthom::Family;
    const tighthom::SimpleFactor& f = target.factors.at(0);
    std::vector<OracleItem> items;
    auto add = [&](const std::string& tag, long cap, long side, bool odd = false) {
        items.push_back({tag, cap, side, odd});
    };
    if (f.family == Family::SU) {
        const long m = f.p, n = f.q;
        for (long a = 1; a <= m; ++a) add(oracle_tag("rho", a), a, a);
        for (long a = 2; a <= m; ++a) add(oracle_tag("su_pp", a), a, a);
        for (long a = 2; a <= m; ++a) add(oracle_tag("sp", a), a, a);
        for (long a = 2; 2 * a <= m; ++a) add(oracle_tag("so*4", a), 2 * a, 2 * a);
        for (long r = 5; oracle_spin_unit(r) <= m; ++r)
            if (r != 6) add(oracle_tag("so2", r), oracle_spin_unit(r), oracle_spin_unit(r));
        if (m < n)
            for (long p = 1; p <= m; ++p)
                for (long q = p + 1; q <= n; ++q) add(oracle_tag("su_pq", p, q), p, q);
    } else if (f.family == Family::SP) {
        const long cap = f.n;
        for (long a = 1; a <= cap; ++a) add(oracle_tag("rho", a), a, a);
        for (long a = 2; a <= cap; ++a) add(oracle_tag("sp", a), a, a);
        for (long a = 2; 2 * a <= cap; ++a) add(oracle_tag("su_pp", a), 2 * a, 2 * a);
        for (long a = 2; 4 * a <= cap; ++a) add(oracle_tag("so*4", a), 4 * a, 4 * a);
        for (long r = 5; oracle_spin_unit(r) <= cap; ++r) {
            const long res = r % 8;
            if (res == 1 || res == 2 || res == 3)
                add(oracle_tag("so2", r), oracle_spin_unit(r), oracle_spin_unit(r));
        }
    } else {  // SOSTAR
        const long cap = f.n / 2;
        for (long a = 1; a <= cap; ++a) add(oracle_tag("rho", a), a, a);
        for (long a = 2; a <= cap; ++a) add(oracle_tag("su_pp", a), a, a);
        for (long a = 2; a <= cap; ++a) add(oracle_tag("sp", a), a, a);
        for (long a = 2; a <= cap; ++a) add(oracle_tag("so*4", a), a, a);
        for (long r = 5; oracle_spin_unit(r) / 2 <= cap; ++r) {
            const long res = r % 8;
            if (r != 6 && (res == 5 || res == 6 || res == 7))
                add(oracle_tag("so2", r), oracle_spin_unit(r) / 2, oracle_spin_unit(r) / 2);
        }
        if (f.n % 2 != 0)
            for (long k = 1; k <= cap; ++k) {
                add(oracle_tag("so*odd", k), k, k, /*odd=*/true);
                add(oracle_tag("su_pq", k, k + 1), k, k, /*odd=*/true);
            }
    }
    return items;
}

inline void oracle_rec(const std::vector<OracleItem>& items, std::size_t i, long cap_left,
                       long side_left, bool odd_used, std::vector<std::string>& acc,
                       std::set<std::string>& out) {
    if (i == items.size()) {
        if (cap_left == 0 && !acc.empty()) {
            auto key = acc;
            std::sort(key.begin(), key.end());
            std::string s;
            for (const auto& t : key) s += t + ";";
            out.insert(s);
        }
        return;
    }
    oracle_rec(items, i + 1, cap_left, side_left, odd_used, acc, out);
    const auto& it = items[i];
    const long gmax = it.odd ? 1 : cap_left / std::max<long>(1, it.cap);
    for (long g = 1; g <= gmax; ++g) {
        if (g * it.cap > cap_left || g * it.side > side_left) break;
        if (it.odd && odd_used) break;
        acc.push_back(it.tag + (g == 1 ? "" : "x" + std::to_string(g)));
        oracle_rec(items, i + 1, cap_left - g * it.cap, side_left - g * it.side,
                   odd_used || it.odd, acc, out);
        acc.pop_back();
    }
}

inline std::set<std::string> oracle_shapes(const tighthom::AlgebraDescriptor& target) {
    const tighthom::SimpleFactor& f = target.factors.at(0);
    const long cap = f.rank();
    const long side = (f.family == tighthom::Family::SU) ? f.q : cap;
    std::set<std::string> out;
    std::vector<std::string> acc;
    const auto items = oracle_items(target);
    oracle_rec(items, 0, cap, side, false, acc, out);
    return out;
}

/// Order-insensitive serialized key of a shape record's entry multiset, in
/// the same format the oracle produces.
inline std::string record_key(const tighthom::ShapeRecord& rec) {
    std::vector<std::string> tags;
    for (const auto& e : rec.entries) tags.push_back(e.str());
    std::sort(tags.begin(), tags.end());
    std::string s;
    for (const auto& t : tags) s += t + ";";
    return s;
}

}  // namespace shape_oracle
