#include "oracles.hpp"

#include <functional>

namespace oracle {

long contingency_count(int n) {
    long total = 0;
    for (int rows = 1; rows <= n; ++rows)
        for (int cols = 1; cols <= n; ++cols) {
            std::vector<int> a(rows * cols, 0);
            std::function<void(int, int)> fill = [&](int cell, int left) {
                if (cell == rows * cols) {
                    if (left != 0) return;
                    for (int i = 0; i < rows; ++i) {
                        int s = 0;
                        for (int j = 0; j < cols; ++j) s += a[i * cols + j];
                        if (s == 0) return;
                    }
                    for (int j = 0; j < cols; ++j) {
                        int s = 0;
                        for (int i = 0; i < rows; ++i) s += a[i * cols + j];
                        if (s == 0) return;
                    }
                    ++total;
                    return;
                }
                for (int v = 0; v <= left; ++v) {
                    a[cell] = v;
                    fill(cell + 1, left - v);
                }
                a[cell] = 0;
            };
            fill(0, n);
        }
    return total;
}

std::set<std::vector<int>> positive_roots(const mbs::CoxeterDatum& d) {
    std::set<std::vector<int>> all;
    std::vector<std::vector<int>> todo;
    for (int i = 0; i < d.rank; ++i) {
        std::vector<int> e(d.rank, 0);
        e[i] = 1;
        todo.push_back(e);
    }
    while (!todo.empty()) {
        auto b = todo.back();
        todo.pop_back();
        if (!all.insert(b).second) continue;
        for (int i = 0; i < d.rank; ++i) {
            int pairing = 0;
            for (int j = 0; j < d.rank; ++j) pairing += d.cartan[i][j] * b[j];
            auto c = b;
            c[i] -= pairing;
            todo.push_back(c);
        }
    }
    std::set<std::vector<int>> pos;
    for (const auto& r : all) {
        bool nonneg = true;
        for (int x : r) nonneg = nonneg && x >= 0;
        if (nonneg) pos.insert(r);
    }
    return pos;
}

long gaussian_binomial(int n, int k, long q) {
    if (k < 0 || k > n) return 0;
    long num = 1, den = 1;
    for (int i = 0; i < k; ++i) {
        long qp = 1, qd = 1;
        for (int t = 0; t < n - i; ++t) qp *= q;
        for (int t = 0; t < i + 1; ++t) qd *= q;
        num *= qp - 1;
        den *= qd - 1;
    }
    return num / den;
}

}  // namespace oracle
