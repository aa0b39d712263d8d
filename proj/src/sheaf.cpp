#include <algorithm>
#include <deque>
#include <sstream>

#include "mbs/linalg.hpp"
#include "mbs/sheaf.hpp"

namespace mbs {

MixedBruhatSheaf::MixedBruhatSheaf(std::shared_ptr<const XiPoset> xi, std::vector<int> dims)
    : xi_(std::move(xi)), dims_(std::move(dims)) {
    if (!xi_) throw std::invalid_argument("sheaf needs a Xi poset");
    if (static_cast<int>(dims_.size()) != xi_->size()) throw std::invalid_argument("dims must cover every Xi element");
    for (int d : dims_)
        if (d < 0) throw std::invalid_argument("negative stalk dimension");
    const int n = xi_->size();
    const int r = xi_->rank();
    dprime_.assign(n, std::vector<RationalMatrix>(r));
    dsecond_.assign(n, std::vector<RationalMatrix>(r));
    for (int m = 0; m < n; ++m) {
        for (const auto& c : xi_->prime_covers(m)) dprime_[m][c.s] = RationalMatrix::zero(dims_[c.target], dims_[m]);
        for (const auto& c : xi_->second_covers(m)) dsecond_[m][c.s] = RationalMatrix::zero(dims_[m], dims_[c.target]);
    }
}

MixedBruhatSheaf::MixedBruhatSheaf(const MixedBruhatSheaf& other)
    : xi_(other.xi_), dims_(other.dims_), dprime_(other.dprime_), dsecond_(other.dsecond_) {}

MixedBruhatSheaf& MixedBruhatSheaf::operator=(const MixedBruhatSheaf& other) {
    if (this != &other) {
        xi_ = other.xi_;
        dims_ = other.dims_;
        dprime_ = other.dprime_;
        dsecond_ = other.dsecond_;
        invalidate();
    }
    return *this;
}

int MixedBruhatSheaf::total_dim() const {
    int t = 0;
    for (int d : dims_) t += d;
    return t;
}

void MixedBruhatSheaf::set_dprime(int m, int s, RationalMatrix a) {
    if (subset_contains(xi_->element(m).I, s)) throw OrderError("no first-order covering relation for this root");
    dprime_[m][s] = std::move(a);
    invalidate();
}

void MixedBruhatSheaf::set_dsecond(int m, int s, RationalMatrix a) {
    if (subset_contains(xi_->element(m).J, s)) throw OrderError("no second-order covering relation for this root");
    dsecond_[m][s] = std::move(a);
    invalidate();
}

namespace {

int lowest_member(Subset I) { return __builtin_ctz(I); }

}  // namespace

RationalMatrix MixedBruhatSheaf::compose_prime(int m, int n) const {
    if (!xi_->geq_prime(m, n)) throw OrderError("compose_prime requires m >=' n");
    if (m == n) return RationalMatrix::identity(dims_[m]);
    auto memo = memo_;
    {
        std::lock_guard<std::mutex> lock(memo->mu);
        auto it = memo->prime.find({m, n});
        if (it != memo->prime.end()) return it->second;
    }
    const auto& em = xi_->element(m);
    int s = lowest_member(xi_->element(n).I & ~em.I);
    int next = xi_->prime_contract(m, em.I | (Subset{1} << s));
    RationalMatrix result = compose_prime(next, n) * dprime_[m][s];
    std::lock_guard<std::mutex> lock(memo->mu);
    memo->prime.emplace(std::make_pair(m, n), result);
    return result;
}

RationalMatrix MixedBruhatSheaf::compose_second(int m, int n) const {
    if (!xi_->geq_second(m, n)) throw OrderError("compose_second requires m >='' n");
    if (m == n) return RationalMatrix::identity(dims_[m]);
    auto memo = memo_;
    {
        std::lock_guard<std::mutex> lock(memo->mu);
        auto it = memo->second.find({m, n});
        if (it != memo->second.end()) return it->second;
    }
    const auto& em = xi_->element(m);
    int s = lowest_member(xi_->element(n).J & ~em.J);
    int next = xi_->second_contract(m, em.J | (Subset{1} << s));
    RationalMatrix result = dsecond_[m][s] * compose_second(next, n);
    std::lock_guard<std::mutex> lock(memo->mu);
    memo->second.emplace(std::make_pair(m, n), result);
    return result;
}

namespace {

std::string shape_of(const RationalMatrix& a) {
    return std::to_string(a.rows()) + "x" + std::to_string(a.cols());
}

bool full_rank_square(const RationalMatrix& a) { return a.rows() == a.cols() && rank(a) == a.rows(); }

}  // namespace

MbsReport check_mbs(const MixedBruhatSheaf& e) {
    const XiPoset& xi = e.xi();
    const int n = xi.size();
    const Subset full = xi.datum().full_set();
    MbsReport report;

    for (int m = 0; m < n; ++m) {
        for (const auto& c : xi.prime_covers(m)) {
            const auto& a = e.dprime(m, c.s);
            if (static_cast<int>(a.rows()) != e.dim(c.target) || static_cast<int>(a.cols()) != e.dim(m))
                report.shape.push_back({"shape", {m, c.target}, "dprime " + xi.label(m) + " -> " + xi.label(c.target) +
                                                                   " has shape " + shape_of(a)});
        }
        for (const auto& c : xi.second_covers(m)) {
            const auto& a = e.dsecond(m, c.s);
            if (static_cast<int>(a.rows()) != e.dim(m) || static_cast<int>(a.cols()) != e.dim(c.target))
                report.shape.push_back({"shape", {m, c.target}, "dsecond " + xi.label(m) + " -> " +
                                                                    xi.label(c.target) + " has shape " + shape_of(a)});
        }
    }
    if (!report.shape.empty()) return report;

    // MBS1: by induction on the gap, all chains from m to n agree iff every
    // choice of last step composed with the canonical composite agrees.
    for (int m = 0; m < n; ++m) {
        const auto& em = xi.element(m);
        for (Subset K = 0; K <= full; ++K) {
            if (!subset_leq(em.I, K) || subset_size(K & ~em.I) < 2) continue;
            int target = xi.prime_contract(m, K);
            RationalMatrix ref = e.compose_prime(m, target);
            for (int a : subset_members(K & ~em.I)) {
                int k = xi.prime_contract(m, K & ~(Subset{1} << a));
                ++report.configurations_checked;
                if (!(e.dprime(k, a) * e.compose_prime(m, k) == ref))
                    report.mbs1.push_back({"MBS1", {m, target},
                                           "dprime chains " + xi.label(m) + " -> " + xi.label(target) +
                                               " disagree when the last root added is " + std::to_string(a)});
            }
        }
        for (Subset K = 0; K <= full; ++K) {
            if (!subset_leq(em.J, K) || subset_size(K & ~em.J) < 2) continue;
            int target = xi.second_contract(m, K);
            RationalMatrix ref = e.compose_second(m, target);
            for (int a : subset_members(K & ~em.J)) {
                int k = xi.second_contract(m, K & ~(Subset{1} << a));
                ++report.configurations_checked;
                if (!(e.compose_second(m, k) * e.dsecond(k, a) == ref))
                    report.mbs1.push_back({"MBS1", {m, target},
                                           "dsecond chains " + xi.label(m) + " -> " + xi.label(target) +
                                               " disagree when the last root added is " + std::to_string(a)});
            }
        }
    }

    // MBS2 over every configuration m' >=' n' <='' n with both gaps nonempty.
    for (int np = 0; np < n; ++np) {
        const auto& enp = xi.element(np);
        const Subset I2 = enp.I, J2 = enp.J;
        for (Subset I1 = 0; I1 <= full; ++I1) {
            if (!subset_leq(I1, I2) || I1 == I2) continue;
            for (int mp : xi.prime_fiber(np, I1)) {
                RationalMatrix down = e.compose_prime(mp, np);
                for (Subset J1 = 0; J1 <= full; ++J1) {
                    if (!subset_leq(J1, J2) || J1 == J2) continue;
                    for (int nn : xi.second_fiber(np, J1)) {
                        ++report.configurations_checked;
                        RationalMatrix lhs = e.compose_second(nn, np) * down;
                        RationalMatrix rhs = RationalMatrix::zero(e.dim(nn), e.dim(mp));
                        for (int m : xi.sup(mp, nn)) rhs += e.compose_prime(m, nn) * e.compose_second(m, mp);
                        if (!(lhs == rhs))
                            report.mbs2.push_back({"MBS2", {mp, np, nn},
                                                   "configuration " + xi.label(mp) + " >=' " + xi.label(np) +
                                                       " <='' " + xi.label(nn)});
                    }
                }
            }
        }
    }

    // MBS3 on anodyne covering relations; longer anodyne relations are
    // composites of anodyne covers.
    for (int m = 0; m < n; ++m) {
        const int size = xi.element(m).orbit_size;
        for (const auto& c : xi.prime_covers(m)) {
            if (xi.element(c.target).orbit_size != size) continue;
            ++report.configurations_checked;
            if (!full_rank_square(e.dprime(m, c.s)))
                report.mbs3.push_back({"MBS3", {m, c.target},
                                       "anodyne dprime " + xi.label(m) + " -> " + xi.label(c.target) +
                                           " is not invertible"});
        }
        for (const auto& c : xi.second_covers(m)) {
            if (xi.element(c.target).orbit_size != size) continue;
            ++report.configurations_checked;
            if (!full_rank_square(e.dsecond(m, c.s)))
                report.mbs3.push_back({"MBS3", {m, c.target},
                                       "anodyne dsecond " + xi.label(m) + " -> " + xi.label(c.target) +
                                           " is not invertible"});
        }
    }
    return report;
}

MixedBruhatSheaf zero_sheaf(std::shared_ptr<const XiPoset> xi) {
    std::vector<int> dims(xi->size(), 0);
    return MixedBruhatSheaf(std::move(xi), std::move(dims));
}

MixedBruhatSheaf dual(const MixedBruhatSheaf& e) {
    const XiPoset& xi = e.xi();
    std::vector<int> dims(xi.size());
    for (int m = 0; m < xi.size(); ++m) dims[m] = e.dim(xi.tau(m));
    MixedBruhatSheaf out(e.xi_ptr(), dims);
    for (int m = 0; m < xi.size(); ++m) {
        int t = xi.tau(m);
        for (const auto& c : xi.prime_covers(m)) out.set_dprime(m, c.s, e.dsecond(t, c.s).transpose());
        for (const auto& c : xi.second_covers(m)) out.set_dsecond(m, c.s, e.dprime(t, c.s).transpose());
    }
    return out;
}

MixedBruhatSheaf tensor_identity(const MixedBruhatSheaf& e, int d) {
    if (d < 0) throw std::invalid_argument("negative multiplicity");
    const XiPoset& xi = e.xi();
    std::vector<int> dims(e.dims());
    for (int& x : dims) x *= d;
    MixedBruhatSheaf out(e.xi_ptr(), dims);
    const auto id = RationalMatrix::identity(d);
    for (int m = 0; m < xi.size(); ++m) {
        for (const auto& c : xi.prime_covers(m)) out.set_dprime(m, c.s, RationalMatrix::kron(e.dprime(m, c.s), id));
        for (const auto& c : xi.second_covers(m))
            out.set_dsecond(m, c.s, RationalMatrix::kron(e.dsecond(m, c.s), id));
    }
    return out;
}

namespace {

RationalMatrix restrict_map(const RationalMatrix& a, const RationalMatrix& source, const RationalMatrix& target,
                            const std::string& where) {
    if (source.cols() == 0) return RationalMatrix::zero(target.cols(), 0);
    auto x = solve_in_basis(target, a * source);
    if (!x) throw AxiomError("subspaces are not stable under " + where);
    return *x;
}

}  // namespace

MixedBruhatSheaf restrict_to(const MixedBruhatSheaf& e, const std::vector<RationalMatrix>& bases) {
    const XiPoset& xi = e.xi();
    if (static_cast<int>(bases.size()) != xi.size()) throw std::invalid_argument("one basis per Xi element required");
    std::vector<int> dims(xi.size());
    for (int m = 0; m < xi.size(); ++m) {
        if (static_cast<int>(bases[m].rows()) != e.dim(m) && bases[m].cols() != 0)
            throw std::invalid_argument("basis has the wrong ambient dimension at " + xi.label(m));
        dims[m] = static_cast<int>(bases[m].cols());
    }
    MixedBruhatSheaf out(e.xi_ptr(), dims);
    for (int m = 0; m < xi.size(); ++m) {
        for (const auto& c : xi.prime_covers(m))
            out.set_dprime(m, c.s,
                           restrict_map(e.dprime(m, c.s), bases[m], bases[c.target], "dprime at " + xi.label(m)));
        for (const auto& c : xi.second_covers(m))
            out.set_dsecond(m, c.s,
                            restrict_map(e.dsecond(m, c.s), bases[c.target], bases[m], "dsecond at " + xi.label(m)));
    }
    return out;
}

SubsheafResult generated_sub(const MixedBruhatSheaf& e, const std::map<int, RationalMatrix>& seeds) {
    const XiPoset& xi = e.xi();
    const int n = xi.size();
    std::vector<RationalMatrix> basis(n);
    for (int m = 0; m < n; ++m) basis[m] = RationalMatrix::zero(e.dim(m), 0);

    std::deque<int> queue;
    std::vector<char> queued(n, 0);
    auto absorb = [&](int m, const RationalMatrix& vectors) {
        if (vectors.cols() == 0 || vectors.is_zero()) return;
        RationalMatrix joined = RationalMatrix::hconcat(basis[m], vectors);
        if (rank(joined) == basis[m].cols()) return;
        basis[m] = column_space_basis(joined);
        if (!queued[m]) {
            queued[m] = 1;
            queue.push_back(m);
        }
    };
    for (const auto& [m, v] : seeds) {
        if (static_cast<int>(v.rows()) != e.dim(m)) throw std::invalid_argument("seed has the wrong dimension");
        absorb(m, v);
    }

    std::map<std::pair<int, int>, RationalMatrix> prime_inv, second_inv;
    auto inverse_of = [](std::map<std::pair<int, int>, RationalMatrix>& cache, int m, int s,
                         const RationalMatrix& a) -> const RationalMatrix& {
        auto it = cache.find({m, s});
        if (it == cache.end()) {
            auto inv = inverse(a);
            if (!inv) throw AxiomError("anodyne covering map is not invertible");
            it = cache.emplace(std::make_pair(m, s), std::move(*inv)).first;
        }
        return it->second;
    };

    while (!queue.empty()) {
        int m = queue.front();
        queue.pop_front();
        queued[m] = 0;
        const RationalMatrix b = basis[m];
        const int size = xi.element(m).orbit_size;
        for (const auto& c : xi.prime_covers(m)) {
            absorb(c.target, e.dprime(m, c.s) * b);
        }
        for (const auto& c : xi.prime_covered_by(m)) {
            if (xi.element(c.target).orbit_size == size)
                absorb(c.target, inverse_of(prime_inv, c.target, c.s, e.dprime(c.target, c.s)) * b);
        }
        for (const auto& c : xi.second_covered_by(m)) {
            absorb(c.target, e.dsecond(c.target, c.s) * b);
        }
        for (const auto& c : xi.second_covers(m)) {
            if (xi.element(c.target).orbit_size == size)
                absorb(c.target, inverse_of(second_inv, m, c.s, e.dsecond(m, c.s)) * b);
        }
    }
    SubsheafResult out{restrict_to(e, basis), basis};
    return out;
}

bool is_simple(const MixedBruhatSheaf& e) {
    if (e.total_dim() == 0) return false;
    const XiPoset& xi = e.xi();
    for (int m = 0; m < xi.size(); ++m) {
        for (int i = 0; i < e.dim(m); ++i) {
            RationalMatrix v = RationalMatrix::zero(e.dim(m), 1);
            v(i, 0) = 1;
            auto sub = generated_sub(e, {{m, v}});
            for (int k = 0; k < xi.size(); ++k)
                if (sub.sheaf.dim(k) < e.dim(k)) return false;
        }
    }
    return true;
}

BicubeCells bicube_cells(const XiPoset& xi, Subset I) {
    const auto& fc = xi.faces();
    const int origin = fc.base_face(xi.datum().full_set());
    const int k = fc.base_face(I);
    return {xi.find(origin, k), xi.find(k, k), xi.find(k, origin)};
}

BicubeData bicube(const MixedBruhatSheaf& e) {
    const XiPoset& xi = e.xi();
    const Subset full = xi.datum().full_set();
    BicubeData b;
    b.rank = xi.rank();
    std::map<Subset, RationalMatrix> phi, phi_inv;
    std::map<Subset, BicubeCells> cells;
    for (Subset I = 0; I <= full; ++I) {
        auto c = bicube_cells(xi, I);
        cells[I] = c;
        b.spaces[I] = e.dim(c.primed);
        auto a = inverse(e.compose_prime(c.middle, c.primed));
        auto d = inverse(e.compose_second(c.middle, c.double_primed));
        if (!a || !d) throw AxiomError("bicube anodyne map is not invertible at " + subset_to_string(I));
        phi[I] = *d * *a;
        phi_inv[I] = e.compose_prime(c.middle, c.primed) * e.compose_second(c.middle, c.double_primed);
    }
    for (Subset I = 0; I <= full; ++I) {
        for (Subset J = 0; J <= full; ++J) {
            if (!subset_leq(I, J)) continue;
            b.u[{I, J}] = e.compose_second(cells[I].primed, cells[J].primed);
            b.v[{I, J}] = phi_inv[J] * e.compose_prime(cells[I].double_primed, cells[J].double_primed) * phi[I];
        }
    }
    return b;
}

std::vector<std::string> bicube_transitivity_failures(const BicubeData& b) {
    std::vector<std::string> out;
    const Subset full = b.rank == 0 ? 0 : ((Subset{1} << b.rank) - 1);
    for (Subset I = 0; I <= full; ++I) {
        if (!b.v.at({I, I}).is_identity()) out.push_back("v" + subset_to_string(I) + subset_to_string(I) + " != id");
        if (!b.u.at({I, I}).is_identity()) out.push_back("u" + subset_to_string(I) + subset_to_string(I) + " != id");
        for (Subset J = 0; J <= full; ++J) {
            if (!subset_leq(I, J)) continue;
            for (Subset K = 0; K <= full; ++K) {
                if (!subset_leq(J, K)) continue;
                std::string tag = subset_to_string(I) + subset_to_string(J) + subset_to_string(K);
                if (!(b.v.at({I, K}) == b.v.at({J, K}) * b.v.at({I, J}))) out.push_back("v not transitive at " + tag);
                if (!(b.u.at({I, K}) == b.u.at({I, J}) * b.u.at({J, K}))) out.push_back("u not transitive at " + tag);
            }
        }
    }
    return out;
}

PhiPsiResult phi_psi(const MixedBruhatSheaf& e) {
    if (e.xi().rank() != 1) throw std::domain_error("phi_psi is defined for rank one only");
    BicubeData b = bicube(e);
    PhiPsiResult out;
    out.phi_dim = b.spaces.at(1);
    out.psi_dim = b.spaces.at(0);
    out.u = b.u.at({0, 1});
    out.v = b.v.at({0, 1});
    out.T = RationalMatrix::identity(out.psi_dim) - out.u * out.v;
    out.invertible = rank(out.T) == out.T.rows();
    return out;
}

namespace {

// Generalization map E(a) -> E(b) for a <= b in one of the two orders.
RationalMatrix gamma(const MixedBruhatSheaf& e, int a, int b) {
    const XiPoset& xi = e.xi();
    if (xi.element(a).orbit_size != xi.element(b).orbit_size)
        throw PathError("path step " + xi.label(a) + " - " + xi.label(b) + " is not anodyne");
    if (xi.geq_prime(b, a)) {
        auto inv = inverse(e.compose_prime(b, a));
        if (!inv) throw PathError("anodyne dprime not invertible at " + xi.label(b));
        return *inv;
    }
    return e.compose_second(b, a);
}

}  // namespace

RationalMatrix transport(const MixedBruhatSheaf& e, const CellPath& path) {
    const XiPoset& xi = e.xi();
    if (path.cells.empty()) throw PathError("empty path");
    RationalMatrix acc = RationalMatrix::identity(e.dim(path.cells.front()));
    for (std::size_t k = 1; k < path.cells.size(); ++k) {
        int a = path.cells[k - 1];
        int b = path.cells[k];
        if (a == b) continue;
        RationalMatrix step;
        if (xi.geq_prime(b, a) || xi.geq_second(b, a)) {
            step = gamma(e, a, b);
        } else if (xi.geq_prime(a, b) || xi.geq_second(a, b)) {
            auto inv = inverse(gamma(e, b, a));
            if (!inv) throw PathError("generalization map not invertible at " + xi.label(a));
            step = *inv;
        } else {
            throw PathError("path step " + xi.label(a) + " - " + xi.label(b) + " is not a single-order relation");
        }
        acc = step * acc;
    }
    return acc;
}

RationalMatrix monodromy(const MixedBruhatSheaf& e, const CellPath& loop) {
    if (loop.cells.empty() || loop.cells.front() != loop.cells.back()) throw PathError("monodromy needs a closed loop");
    return transport(e, loop);
}

namespace {

std::vector<int> loop_cells(const XiPoset& xi, int s) {
    if (s < 0 || s >= xi.rank()) throw std::out_of_range("simple root index out of range");
    const auto& fc = xi.faces();
    const Subset bit = Subset{1} << s;
    const int wall = fc.base_face(bit);
    const int chamber = fc.base_face(0);
    const int flipped = fc.face_of(xi.group().simple(s), 0);
    return {xi.find(wall, chamber), xi.find(chamber, chamber), xi.find(chamber, wall), xi.find(chamber, flipped),
            xi.find(wall, flipped)};
}

}  // namespace

CellPath generator_loop(const XiPoset& xi, int s) {
    auto c = loop_cells(xi, s);
    if (c.back() != c.front()) throw std::logic_error("generator loop does not close");
    return {c};
}

CellPath chamber_loop(const XiPoset& xi, int s) {
    auto c = loop_cells(xi, s);
    return {{c[1], c[2], c[3], c[4], c[1]}};
}

}  // namespace mbs
