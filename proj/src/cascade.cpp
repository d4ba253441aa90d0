#include "rpcfrag/cascade.hpp"

#include "rpcfrag/error.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rpcfrag {

namespace {

void require_index(double x)
{
    require(x > 0.0 && x < 1.0, ErrorCode::domain, "stable index must lie in (0,1)");
}

void require_indices(const std::vector<double>& xs)
{
    require(!xs.empty(), ErrorCode::argument, "at least one level is required");
    for (std::size_t k = 0; k < xs.size(); ++k) {
        require_index(xs[k]);
        if (k > 0) require(xs[k] > xs[k - 1], ErrorCode::argument, "indices must increase strictly");
    }
}

void require_finite_positive(double v)
{
    require(std::isfinite(v) && v > 0.0, ErrorCode::construction,
            "cascade weight left the floating-point range");
}

// Positive stable law with Laplace transform exp(-c lambda^x), as c^(1/x) S.
double scaled_stable(double c, double x, RandomStream& rng)
{
    return std::pow(c, 1.0 / x) * rng.positive_stable(x);
}

// E[S^q] for the stable law exp(-c lambda^x), q < x.
double stable_moment(double c, double x, double q)
{
    return std::pow(c, q / x) * boost::math::tgamma(1.0 - q / x) / boost::math::tgamma(1.0 - q);
}

// Children of one node: the largest atom is always kept, the others when they
// reach thr. Returns the effective cut below which atoms were discarded.
double take_children(double x, double domain, double thr, RandomStream& rng,
                     std::vector<double>& out)
{
    out.clear();
    PoissonAtomStream stream(x, domain);
    const double first = stream.next(rng);
    out.push_back(first);
    if (first >= thr) stream.take_above(thr, rng, out);
    return std::min(thr, out.back());
}

}  // namespace

PoissonAtomStream::PoissonAtomStream(double x, double domain_length)
    : x_(x), domain_length_(domain_length)
{
    require_index(x);
    require(domain_length > 0.0 && std::isfinite(domain_length), ErrorCode::domain,
            "domain length must be positive");
}

double PoissonAtomStream::next(RandomStream& rng)
{
    if (has_pending_) {
        has_pending_ = false;
        return pending_;
    }
    // The j-th largest atom is (Gamma_j / L)^(-1/x) for unit-rate arrivals Gamma_j.
    arrival_ += rng.exponential();
    return std::pow(arrival_ / domain_length_, -1.0 / x_);
}

void PoissonAtomStream::take_above(double thr, RandomStream& rng, std::vector<double>& out)
{
    for (;;) {
        const double r = next(rng);
        if (r < thr) {
            pending_ = r;
            has_pending_ = true;
            return;
        }
        if (out.size() >= max_node_atoms)
            fail(ErrorCode::configuration, "node atom count exceeds the cap; use a larger eps");
        out.push_back(r);
    }
}

std::vector<double> sample_poisson_atoms(double x, double eps, double domain_length,
                                         RandomStream& rng)
{
    require(eps > 0.0 && std::isfinite(eps), ErrorCode::domain,
            "eps must be positive; the total intensity is infinite otherwise");
    PoissonAtomStream stream(x, domain_length);
    std::vector<double> out;
    stream.take_above(eps, rng, out);
    return out;
}

double small_atom_mass(double x, double thr)
{
    require_index(x);
    require(thr >= 0.0, ErrorCode::domain, "threshold must be nonnegative");
    return x * std::pow(thr, 1.0 - x) / (1.0 - x);
}

CascadeTree build_cascade(const std::vector<double>& xs, double eps, RandomStream& rng)
{
    require_indices(xs);
    require(eps > 0.0 && eps < 1.0, ErrorCode::domain, "eps must lie in (0,1)");
    const std::size_t p = xs.size();

    // Z_m, the total of the products below a level-m node, is stable with
    // index xs[m+1] and Laplace exponent cz[m] lambda^xs[m+1].
    std::vector<double> cz(p, 0.0);
    if (p >= 2) {
        cz[p - 2] = boost::math::tgamma(1.0 - xs[p - 1]);
        for (std::size_t m = p - 2; m-- > 0;)
            cz[m] = boost::math::tgamma(1.0 - xs[m + 1]) *
                    stable_moment(cz[m + 1], xs[m + 2], xs[m + 1]);
    }

    CascadeTree tree;
    tree.xs = xs;
    tree.eps = eps;
    tree.levels.resize(p);
    std::vector<std::vector<double>> theta(p);
    std::vector<std::vector<double>> dust(p);

    // Discarded children of a node with product th below the cut: leaves
    // contribute their expected total, deeper subtrees a stable variable whose
    // Levy tail matches the discarded part.
    auto dust_of = [&](std::size_t child_level, double th, double cut) {
        const double x = xs[child_level];
        if (child_level + 1 == p) return th * small_atom_mass(x, cut);
        const double xn = xs[child_level + 1];
        const double delta = xn - x;
        const double scale = x * std::pow(cut, delta) / delta;
        return th * std::pow(scale, 1.0 / xn) * scaled_stable(cz[child_level], xn, rng);
    };

    // Relative cut per level. Leaf dust is many small atoms and barely moves
    // induced partitions, so leaves are cut at eps. Dust above the leaves is a
    // heavy-tailed lump of whole subtrees, so those cuts are lowered until the
    // lump's scale is about sqrt(eps).
    std::vector<double> rel(p, eps);
    const double lump = std::sqrt(eps);
    for (std::size_t c = 0; c + 1 < p; ++c) {
        const double x = xs[c];
        const double xn = xs[c + 1];
        const double delta = xn - x;
        rel[c] = std::min(eps, std::pow(std::pow(lump, xn) * delta / (x * cz[c]), 1.0 / delta));
    }

    std::vector<double> parent_theta{1.0};
    double root_dust = 0.0;
    for (std::size_t level = 0; level < p; ++level) {
        const std::size_t parents = parent_theta.size();
        // The cut for every child product is relative to the largest product on
        // this level, which the parents' first atoms already determine.
        std::vector<PoissonAtomStream> streams;
        streams.reserve(parents);
        std::vector<double> firsts(parents);
        double top = 0.0;
        for (std::size_t v = 0; v < parents; ++v) {
            streams.emplace_back(xs[level], 1.0);
            firsts[v] = streams[v].next(rng);
            top = std::max(top, parent_theta[v] * firsts[v]);
        }
        require_finite_positive(top);
        auto& nodes = tree.levels[level];
        auto& th = theta[level];
        std::vector<double> kids;
        for (std::size_t v = 0; v < parents; ++v) {
            const double thr = rel[level] * top / parent_theta[v];
            kids.clear();
            // A parent below the cut keeps no children; its whole subtree is
            // dust. The largest product on the level always survives.
            if (firsts[v] >= thr) {
                kids.push_back(firsts[v]);
                streams[v].take_above(thr, rng, kids);
            }
            const double d = dust_of(level, parent_theta[v], thr);
            if (level == 0)
                root_dust = d;
            else {
                auto& parent = tree.levels[level - 1][v];
                parent.first_child = static_cast<int>(nodes.size());
                parent.child_count = static_cast<int>(kids.size());
                dust[level - 1][v] = d;
            }
            for (std::size_t j = 0; j < kids.size(); ++j) {
                CascadeNode node;
                if (level > 0) node.index = tree.levels[level - 1][v].index;
                node.index.push_back(static_cast<int>(j) + 1);
                node.parent = level == 0 ? -1 : static_cast<int>(v);
                nodes.push_back(std::move(node));
                const double prod = parent_theta[v] * kids[j];
                require_finite_positive(prod);
                th.push_back(prod);
            }
        }
        dust[level].assign(nodes.size(), 0.0);
        parent_theta = th;
    }

    // Totals bottom-up: a node carries its stored descendants plus dust.
    std::vector<double> total = theta[p - 1];
    for (std::size_t level = p - 1; level-- > 0;) {
        std::vector<double> up(tree.levels[level].size());
        for (std::size_t v = 0; v < up.size(); ++v) {
            const auto& node = tree.levels[level][v];
            double s = dust[level][v];
            for (int c = 0; c < node.child_count; ++c)
                s += total[static_cast<std::size_t>(node.first_child + c)];
            up[v] = s;
        }
        for (std::size_t v = 0; v < total.size(); ++v)
            tree.levels[level + 1][v].weight = total[v];
        total = std::move(up);
    }
    for (std::size_t v = 0; v < total.size(); ++v) tree.levels[0][v].weight = total[v];
    const double c = std::accumulate(total.begin(), total.end(), root_dust);
    require_finite_positive(c);

    tree.root_dust = root_dust / c;
    tree.truncation_bounds.resize(p);
    for (std::size_t level = 0; level < p; ++level) {
        double stored = 0.0;
        for (std::size_t v = 0; v < tree.levels[level].size(); ++v) {
            auto& node = tree.levels[level][v];
            node.weight /= c;
            node.dust = dust[level][v] / c;
            stored += node.weight;
        }
        tree.truncation_bounds[level] = std::max(0.0, 1.0 - stored);
    }
    return tree;
}

std::vector<SetPartition> cascade_partitions(const CascadeTree& tree, int n, RandomStream& rng)
{
    require(n >= 1, ErrorCode::argument, "n must be positive");
    const std::size_t p = tree.levels.size();
    std::vector<std::vector<double>> prefix(p);
    for (std::size_t level = 0; level < p; ++level) {
        const auto& nodes = tree.levels[level];
        prefix[level].resize(nodes.size() + 1, 0.0);
        for (std::size_t v = 0; v < nodes.size(); ++v)
            prefix[level][v + 1] = prefix[level][v] + nodes[v].weight;
    }
    std::vector<std::vector<int>> labels(p, std::vector<int>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i) {
        double u = rng.uniform();
        std::size_t lo = 0;
        std::size_t count = tree.levels[0].size();
        std::size_t level = 0;
        for (; level < p; ++level) {
            const auto& pre = prefix[level];
            const double target = pre[lo] + u;
            const auto begin = pre.begin() + static_cast<std::ptrdiff_t>(lo) + 1;
            const auto end = pre.begin() + static_cast<std::ptrdiff_t>(lo + count) + 1;
            const auto it = std::upper_bound(begin, end, target);
            if (it == end) break;  // dust of the current node
            const std::size_t v = static_cast<std::size_t>(it - pre.begin()) - 1;
            u = target - pre[v];
            labels[level][static_cast<std::size_t>(i)] = static_cast<int>(v);
            const auto& node = tree.levels[level][v];
            lo = static_cast<std::size_t>(node.first_child);
            count = static_cast<std::size_t>(node.child_count);
        }
        for (; level < p; ++level)
            labels[level][static_cast<std::size_t>(i)] =
                static_cast<int>(tree.levels[level].size()) + i;
    }
    std::vector<SetPartition> out;
    out.reserve(p);
    for (const auto& l : labels) out.push_back(SetPartition::from_labels(l));
    return out;
}

double SubordinatorPath::range() const
{
    double s = 0.0;
    for (const auto& j : jumps) s += j.size;
    return s;
}

SubordinatorPath sample_subordinator(double x, double domain_length, double eps, RandomStream& rng)
{
    SubordinatorPath path;
    path.x = x;
    path.domain_length = domain_length;
    path.eps = eps;
    for (double size : sample_poisson_atoms(x, eps, domain_length, rng))
        path.jumps.push_back(Jump{rng.uniform() * domain_length, size});
    std::sort(path.jumps.begin(), path.jumps.end(),
              [](const Jump& a, const Jump& b) { return a.location < b.location; });
    return path;
}

SubordinatorPath compose_subordinators(const SubordinatorPath& outer, const SubordinatorPath& inner)
{
    require(inner.range() <= outer.domain_length, ErrorCode::argument,
            "inner range overflows the outer domain");
    SubordinatorPath out;
    out.x = outer.x * inner.x;
    out.domain_length = inner.domain_length;
    out.eps = outer.eps;
    std::size_t o = 0;
    double left = 0.0;
    for (const auto& j : inner.jumps) {
        const double right = left + j.size;
        while (o < outer.jumps.size() && outer.jumps[o].location < left) ++o;
        double sum = 0.0;
        while (o < outer.jumps.size() && outer.jumps[o].location < right) sum += outer.jumps[o++].size;
        if (sum > 0.0) out.jumps.push_back(Jump{j.location, sum});
        left = right;
    }
    return out;
}

NestedIntervals nested_intervals(const std::vector<double>& xs, double a, double eps,
                                 RandomStream& rng)
{
    require_indices(xs);
    require(a > 0.0 && std::isfinite(a), ErrorCode::domain, "domain length must be positive");
    require(eps > 0.0 && eps < 1.0, ErrorCode::domain, "eps must lie in (0,1)");
    const std::size_t p = xs.size();
    auto x_after = [&](std::size_t k) { return k + 1 < p ? xs[k + 1] : 1.0; };
    std::vector<double> y(p);
    for (std::size_t k = 0; k < p; ++k) y[k] = xs[k] / x_after(k);
    // Levels k..p-1 composed form a stable subordinator of index xs[k] with
    // Laplace exponent cc[k] lambda^xs[k] per unit domain length.
    std::vector<double> cc(p);
    cc[p - 1] = boost::math::tgamma(1.0 - y[p - 1]);
    for (std::size_t k = p - 1; k-- > 0;)
        cc[k] = boost::math::tgamma(1.0 - y[k]) * std::pow(cc[k + 1], y[k]);

    struct Raw {
        double xi;
        double location;
        int parent;
        int first_child = 0;
        int child_count = 0;
        double dust_extent = 0.0;
        double extent = 0.0;
    };
    std::vector<std::vector<Raw>> raw(p);
    // Final extent of discarded jumps of level k with total length j.
    auto dust_extent = [&](std::size_t k, double j) {
        if (k + 1 == p) return j;
        return scaled_stable(j * cc[k + 1], xs[k + 1], rng);
    };

    std::vector<double> kids;
    double root_dust = 0.0;
    for (std::size_t k = 0; k < p; ++k) {
        const std::size_t parents = k == 0 ? 1 : raw[k - 1].size();
        for (std::size_t v = 0; v < parents; ++v) {
            const double len = k == 0 ? a : raw[k - 1][v].xi;
            // Cut relative to the parent: jumps over length len scale as len^(1/y).
            const double thr = std::pow(eps, x_after(k)) * std::pow(len, 1.0 / y[k]);
            const double cut = take_children(y[k], len, thr, rng, kids);
            const double d = dust_extent(k, len * small_atom_mass(y[k], cut));
            std::vector<Raw> made;
            made.reserve(kids.size());
            for (double xi : kids) made.push_back(Raw{xi, rng.uniform() * len, static_cast<int>(v)});
            std::sort(made.begin(), made.end(),
                      [](const Raw& l, const Raw& r) { return l.location < r.location; });
            if (k == 0)
                root_dust = d;
            else {
                raw[k - 1][v].first_child = static_cast<int>(raw[k].size());
                raw[k - 1][v].child_count = static_cast<int>(made.size());
                raw[k - 1][v].dust_extent = d;
            }
            raw[k].insert(raw[k].end(), made.begin(), made.end());
        }
    }

    for (std::size_t k = p; k-- > 0;) {
        for (auto& node : raw[k]) {
            if (k + 1 == p) {
                node.extent = node.xi;
                continue;
            }
            double s = node.dust_extent;
            for (int c = 0; c < node.child_count; ++c)
                s += raw[k + 1][static_cast<std::size_t>(node.first_child + c)].extent;
            node.extent = s;
        }
    }
    double total = root_dust;
    for (const auto& node : raw[0]) total += node.extent;
    require_finite_positive(total);

    NestedIntervals out;
    out.xs = xs;
    out.domain = a;
    out.eps = eps;
    out.levels.resize(p);
    out.truncation_bounds.resize(p);
    for (auto& fam : out.levels) fam.length = total;

    // Children are laid out in the order of their jump locations, with the
    // dust spread over the gaps in proportion to their lengths.
    auto layout = [&](std::size_t k, std::size_t first, std::size_t count, double left, double len,
                      double dust, int parent) {
        double prev = 0.0;
        double cursor = left;
        for (std::size_t c = first; c < first + count; ++c) {
            const Raw& node = raw[k][c];
            cursor += dust * (node.location - prev) / len;
            prev = node.location;
            out.levels[k].intervals.push_back(Interval{cursor, cursor + node.extent, parent, node.xi});
            cursor += node.extent;
        }
    };
    layout(0, 0, raw[0].size(), 0.0, a, root_dust, -1);
    for (std::size_t k = 1; k < p; ++k)
        for (std::size_t v = 0; v < raw[k - 1].size(); ++v) {
            const Raw& node = raw[k - 1][v];
            layout(k, static_cast<std::size_t>(node.first_child),
                   static_cast<std::size_t>(node.child_count), out.levels[k - 1].intervals[v].left,
                   node.xi, node.dust_extent, static_cast<int>(v));
        }
    for (std::size_t k = 0; k < p; ++k) {
        double stored = 0.0;
        for (const auto& iv : out.levels[k].intervals) stored += iv.length();
        out.truncation_bounds[k] = std::max(0.0, 1.0 - stored / total);
    }
    return out;
}

SetPartition partition_from_points(const IntervalFamily& family, const std::vector<double>& points)
{
    const auto& iv = family.intervals;
    const int m = static_cast<int>(iv.size());
    std::vector<int> labels(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double u = points[i];
        const auto it = std::upper_bound(iv.begin(), iv.end(), u,
                                         [](double v, const Interval& b) { return v < b.left; });
        int label = m + static_cast<int>(i);
        if (it != iv.begin()) {
            const auto& cand = *(it - 1);
            if (u >= cand.left && u < cand.right) label = static_cast<int>(it - iv.begin()) - 1;
        }
        labels[i] = label;
    }
    return SetPartition::from_labels(labels);
}

SetPartition partition_from_intervals(const IntervalFamily& family, int n, RandomStream& rng)
{
    require(n >= 1, ErrorCode::argument, "n must be positive");
    std::vector<double> points(static_cast<std::size_t>(n));
    for (auto& u : points) u = rng.uniform() * family.length;
    return partition_from_points(family, points);
}

std::vector<SetPartition> nested_partitions(const NestedIntervals& nested, int n, RandomStream& rng)
{
    require(n >= 1, ErrorCode::argument, "n must be positive");
    require(!nested.levels.empty(), ErrorCode::argument, "no levels");
    std::vector<double> points(static_cast<std::size_t>(n));
    for (auto& u : points) u = rng.uniform() * nested.levels[0].length;
    std::vector<SetPartition> out;
    for (const auto& fam : nested.levels) out.push_back(partition_from_points(fam, points));
    return out;
}

}  // namespace rpcfrag
