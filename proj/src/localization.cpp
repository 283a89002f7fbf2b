#include "framekit/localization.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace framekit {

IndexGroup::IndexGroup(int d_, int L_, int D_) : d(d_), L(L_), D(D_) {
    if (d < 0) throw std::invalid_argument("IndexGroup: negative free rank");
    if (d > 0 && L < 4) throw std::invalid_argument("IndexGroup: cyclic modulus below 4");
    if (D < 1) throw std::invalid_argument("IndexGroup: torsion modulus below 1");
    if (d == 0 && D == 1)
        throw std::invalid_argument("IndexGroup: trivial group");
}

std::size_t IndexGroup::size() const {
    std::size_t s = static_cast<std::size_t>(D);
    for (int i = 0; i < d; ++i) s *= static_cast<std::size_t>(L);
    return s;
}

int IndexGroup::diameter() const {
    int m = D / 2;
    if (d > 0) m = std::max(m, L / 2);
    return m;
}

std::vector<int> IndexGroup::coords(std::size_t flat_index) const {
    std::vector<int> c(static_cast<std::size_t>(d) + 1, 0);
    c[d] = static_cast<int>(flat_index % static_cast<std::size_t>(D));
    flat_index /= static_cast<std::size_t>(D);
    for (int i = d - 1; i >= 0; --i) {
        c[i] = static_cast<int>(flat_index % static_cast<std::size_t>(L));
        flat_index /= static_cast<std::size_t>(L);
    }
    return c;
}

std::size_t IndexGroup::flat(const std::vector<int>& c) const {
    if (c.size() != static_cast<std::size_t>(d) + 1)
        throw std::invalid_argument("IndexGroup: coordinate count mismatch");
    std::size_t f = 0;
    for (int i = 0; i < d; ++i) {
        const int v = ((c[i] % L) + L) % L;
        f = f * static_cast<std::size_t>(L) + static_cast<std::size_t>(v);
    }
    const int t = ((c[d] % D) + D) % D;
    return f * static_cast<std::size_t>(D) + static_cast<std::size_t>(t);
}

std::size_t IndexGroup::add(std::size_t a, std::size_t b) const {
    const std::vector<int> ca = coords(a), cb = coords(b);
    std::vector<int> c(ca.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = ca[i] + cb[i];
    return flat(c);
}

std::size_t IndexGroup::sub(std::size_t a, std::size_t b) const {
    const std::vector<int> ca = coords(a), cb = coords(b);
    std::vector<int> c(ca.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = ca[i] - cb[i];
    return flat(c);
}

std::size_t IndexGroup::neg(std::size_t a) const {
    const std::vector<int> ca = coords(a);
    std::vector<int> c(ca.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = -ca[i];
    return flat(c);
}

int IndexGroup::norm(std::size_t a) const {
    const std::vector<int> c = coords(a);
    int m = 0;
    for (int i = 0; i < d; ++i) m = std::max(m, std::min(c[i], L - c[i]));
    m = std::max(m, std::min(c[d], D - c[d]));
    return m;
}

namespace {

std::vector<int> coordinate_offsets(int modulus, int radius) {
    std::vector<int> out;
    if (radius < 0) return out;
    if (2 * radius + 1 >= modulus) {
        for (int v = 0; v < modulus; ++v) out.push_back(v);
        return out;
    }
    for (int v = 0; v <= radius; ++v) out.push_back(v);
    for (int v = modulus - radius; v < modulus; ++v) out.push_back(v);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

std::vector<std::size_t> IndexGroup::box(std::size_t center, int radius) const {
    std::vector<std::size_t> out;
    if (radius < 0) return out;
    std::vector<std::vector<int>> per(static_cast<std::size_t>(d) + 1);
    for (int i = 0; i < d; ++i) per[i] = coordinate_offsets(L, radius);
    per[d] = coordinate_offsets(D, radius);

    const std::vector<int> cc = coords(center);
    std::vector<int> cur(static_cast<std::size_t>(d) + 1, 0);
    std::vector<std::size_t> pos(static_cast<std::size_t>(d) + 1, 0);
    while (true) {
        for (std::size_t i = 0; i < cur.size(); ++i) cur[i] = cc[i] + per[i][pos[i]];
        out.push_back(flat(cur));
        std::size_t k = cur.size();
        while (k-- > 0) {
            if (++pos[k] < per[k].size()) break;
            pos[k] = 0;
            if (k == 0) return out;
        }
    }
}

std::size_t IndexGroup::box_size(int radius) const {
    if (radius < 0) return 0;
    std::size_t s = static_cast<std::size_t>(std::min(2 * radius + 1, D));
    for (int i = 0; i < d; ++i) s *= static_cast<std::size_t>(std::min(2 * radius + 1, L));
    return s;
}

int IndexGroup::report_radius() const { return d > 0 ? L / 4 : D / 4; }

void LocalizationMap::validate() const {
    const std::size_t g = group.size();
    for (std::size_t t : targets)
        if (t >= g) throw std::invalid_argument("LocalizationMap: target out of range");
}

double GroupSequence::l1() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
}

GroupSequence localization_sequence(const Frame& f, const LocalizationMap& a, const Frame& e) {
    a.validate();
    if (a.targets.size() != f.size())
        throw std::invalid_argument("localization_sequence: map does not cover the family");
    if (e.size() != a.group.size())
        throw std::invalid_argument("localization_sequence: reference not indexed by the group");
    if (e.dim != f.dim)
        throw std::invalid_argument("localization_sequence: dimension mismatch");

    GroupSequence r{a.group, std::vector<double>(a.group.size(), 0.0)};
    for (std::size_t i = 0; i < f.size(); ++i) {
        const std::vector<cx> fi = f.vector(i);
        for (std::size_t k = 0; k < e.size(); ++k) {
            const double mag = std::abs(inner_product(fi, e.vector(k)));
            const std::size_t g = a.group.sub(a.targets[i], k);
            r.values[g] = std::max(r.values[g], mag);
        }
    }
    return r;
}

GroupSequence self_localization_sequence(const Frame& e, const IndexGroup& g) {
    if (e.size() != g.size())
        throw std::invalid_argument("self_localization_sequence: frame not indexed by the group");
    GroupSequence s{g, std::vector<double>(g.size(), 0.0)};
    for (std::size_t k = 0; k < e.size(); ++k) {
        const std::vector<cx> ek = e.vector(k);
        for (std::size_t l = 0; l < e.size(); ++l) {
            const double mag = std::abs(inner_product(ek, e.vector(l)));
            const std::size_t off = g.sub(k, l);
            s.values[off] = std::max(s.values[off], mag);
        }
    }
    return s;
}

double tail_sum(const GroupSequence& seq, int radius) {
    double s = 0.0;
    for (std::size_t g = 0; g < seq.values.size(); ++g)
        if (seq.group.norm(g) >= radius) s += seq.values[g];
    return s;
}

LocalizationProfile localization_profile(const Frame& f, const LocalizationMap& a,
                                         const Frame& e) {
    LocalizationProfile p;
    p.r = localization_sequence(f, a, e);
    p.s = self_localization_sequence(e, a.group);
    p.r_l1 = p.r.l1();
    p.s_l1 = p.s.l1();
    p.k_a = covering_constant(a);
    return p;
}

double truncation_error_scale(const LocalizationProfile& p, int radius) {
    return 3.0 * p.k_a * tail_sum(p.r, radius) * p.s_l1;
}

double covering_constant(const LocalizationMap& a) {
    a.validate();
    const std::size_t gsize = a.group.size();
    std::vector<std::size_t> fibers(gsize, 0);
    for (std::size_t t : a.targets) ++fibers[t];

    double k = 1.0;
    for (int radius = 0; radius <= a.group.diameter(); ++radius) {
        const std::vector<std::size_t> offsets = a.group.box(0, radius);
        const double denom = static_cast<double>(offsets.size());
        for (std::size_t center = 0; center < gsize; ++center) {
            std::size_t count = 0;
            for (std::size_t off : offsets) count += fibers[a.group.add(center, off)];
            k = std::max(k, static_cast<double>(count) / denom);
        }
    }
    return k;
}

namespace {

std::vector<std::size_t> pullback_histogram(const LocalizationMap& a,
                                            const std::vector<std::size_t>& j) {
    std::vector<std::size_t> h(a.group.size(), 0);
    for (std::size_t idx : j) {
        if (idx >= a.targets.size())
            throw std::invalid_argument("density: index out of range");
        ++h[a.targets[idx]];
    }
    return h;
}

} // namespace

DensityTable density_table(const LocalizationMap& a, const std::vector<std::size_t>& j) {
    a.validate();
    const std::vector<std::size_t> hist = pullback_histogram(a, j);
    DensityTable t;
    t.report_radius = a.group.report_radius();
    for (int radius = 0; radius <= t.report_radius; ++radius) {
        const std::vector<std::size_t> offsets = a.group.box(0, radius);
        const double denom = static_cast<double>(offsets.size());
        std::size_t lo = static_cast<std::size_t>(-1), hi = 0;
        for (std::size_t center = 0; center < a.group.size(); ++center) {
            std::size_t count = 0;
            for (std::size_t off : offsets) count += hist[a.group.add(center, off)];
            lo = std::min(lo, count);
            hi = std::max(hi, count);
        }
        DensityRow row;
        row.radius = radius;
        row.sup_ratio = static_cast<double>(hi) / denom;
        row.inf_ratio = static_cast<double>(lo) / denom;
        t.rows.push_back(row);
    }
    t.upper = t.rows.back().sup_ratio;
    t.lower = t.rows.back().inf_ratio;
    return t;
}

double upper_density(const LocalizationMap& a, const std::vector<std::size_t>& j) {
    return density_table(a, j).upper;
}

double lower_density(const LocalizationMap& a, const std::vector<std::size_t>& j) {
    return density_table(a, j).lower;
}

WindowedDensity windowed_density(const LocalizationMap& a, const std::vector<std::size_t>& j,
                                 const std::vector<std::size_t>& centers,
                                 const std::vector<int>& radii) {
    a.validate();
    if (centers.size() != radii.size() || centers.empty())
        throw std::invalid_argument("windowed_density: centers and radii must pair up");
    const std::vector<std::size_t> hist = pullback_histogram(a, j);
    WindowedDensity w;
    for (std::size_t t = 0; t < centers.size(); ++t) {
        if (centers[t] >= a.group.size())
            throw std::invalid_argument("windowed_density: center out of range");
        const std::vector<std::size_t> ball = a.group.box(centers[t], radii[t]);
        std::size_t count = 0;
        for (std::size_t g : ball) count += hist[g];
        w.ratios.push_back(static_cast<double>(count) / static_cast<double>(ball.size()));
    }
    w.lo = *std::min_element(w.ratios.begin(), w.ratios.end());
    w.hi = *std::max_element(w.ratios.begin(), w.ratios.end());
    return w;
}

Frame truncate_frame(const Frame& f, const Frame& e, const LocalizationMap& a, int radius) {
    a.validate();
    if (a.targets.size() != f.size())
        throw std::invalid_argument("truncate_frame: map does not cover the family");
    if (e.size() != a.group.size())
        throw std::invalid_argument("truncate_frame: reference not indexed by the group");
    if (e.dim != f.dim)
        throw std::invalid_argument("truncate_frame: dimension mismatch");
    if (!is_parseval(e))
        throw std::invalid_argument("truncate_frame: reference frame is not Parseval");

    Frame out = f;
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t k = 0; k < f.dim; ++k) out.synthesis.at(k, i) = cx(0.0, 0.0);
    if (radius <= 0) return out;

    for (std::size_t i = 0; i < f.size(); ++i) {
        const std::vector<cx> fi = f.vector(i);
        const std::vector<std::size_t> ball = a.group.box(a.targets[i], radius - 1);
        for (std::size_t k : ball) {
            const std::vector<cx> ek = e.vector(k);
            const cx coeff = inner_product(fi, ek);
            for (std::size_t t = 0; t < f.dim; ++t)
                out.synthesis.at(t, i) += coeff * ek[t];
        }
    }
    return out;
}

int truncation_r0(const GroupSequence& r, double k_a, double s_l1) {
    const double threshold = 1.0 / (k_a * s_l1);
    for (int radius = 0; radius <= r.group.diameter() + 1; ++radius)
        if (tail_sum(r, radius) <= threshold) return radius;
    return r.group.diameter() + 1;
}

TruncationCheck truncation_error_check(const Frame& f, const Frame& e, const LocalizationMap& a,
                                       int radius, const std::vector<std::size_t>& j) {
    const GroupSequence r = localization_sequence(f, a, e);
    const GroupSequence s = self_localization_sequence(e, a.group);
    const double k_a = covering_constant(a);
    const double s_l1 = s.l1();

    const Frame fr = truncate_frame(f, e, a, radius);
    const Frame fj = subframe(f, j);
    const Frame frj = subframe(fr, j);

    TruncationCheck c;
    c.tail = tail_sum(r, radius);
    c.lhs = operator_norm(frame_operator(fj) - frame_operator(frj));
    c.analysis_gap = operator_norm(fj.synthesis.adjoint() - frj.synthesis.adjoint());
    c.analysis_bound = k_a * c.tail * s_l1;

    // cross-Gram matrix of the proof: M(k, i) = <f_i - f_{i,R}, e_k>
    ComplexMatrix m(e.size(), j.size());
    for (std::size_t t = 0; t < j.size(); ++t) {
        std::vector<cx> diff = fj.vector(t);
        const std::vector<cx> trunc = frj.vector(t);
        for (std::size_t u = 0; u < diff.size(); ++u) diff[u] -= trunc[u];
        for (std::size_t k = 0; k < e.size(); ++k)
            m.at(k, t) = inner_product(diff, e.vector(k));
    }
    c.schur_bound = schur_norm_bound(m);

    c.parseval_input = is_parseval(f);
    c.factor = c.parseval_input
                   ? 3.0
                   : operator_norm(fj.synthesis.adjoint()) + operator_norm(frj.synthesis.adjoint());
    c.bound = c.factor * c.analysis_bound;
    c.r0 = truncation_r0(r, k_a, s_l1);
    c.guaranteed = radius >= c.r0;
    c.holds = c.lhs <= c.bound + 1e-9 && c.analysis_gap <= c.analysis_bound + 1e-9 &&
              c.schur_bound <= c.analysis_bound + 1e-9;
    return c;
}

} // namespace framekit
