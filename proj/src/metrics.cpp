#include "clab/metrics.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "clab/exact.hpp"

namespace clab {

Metric Metric::hamming(std::size_t m) {
    if (m == 0 || m > 30) fail(Errc::OutOfRange, "hamming dimension out of range");
    Metric d;
    d.kind_ = MetricKind::Hamming;
    d.m_ = m;
    d.n_ = std::size_t{1} << m;
    d.name_ = "hamming";
    return d;
}

Metric Metric::discrete(std::size_t n) {
    if (n == 0) fail(Errc::InvalidArgument, "empty domain");
    Metric d;
    d.kind_ = MetricKind::Discrete;
    d.n_ = n;
    d.name_ = "discrete";
    return d;
}

Metric Metric::grid_l1(std::vector<std::size_t> sides) {
    if (sides.empty()) fail(Errc::InvalidArgument, "grid needs at least one side");
    Metric d;
    d.kind_ = MetricKind::GridL1;
    d.n_ = 1;
    for (auto s : sides) {
        if (s == 0) fail(Errc::InvalidArgument, "grid side must be positive");
        d.n_ *= s;
    }
    d.sides_ = std::move(sides);
    d.name_ = "grid";
    return d;
}

Metric Metric::matrix(std::size_t n, std::vector<Rational> table, std::string name) {
    if (n == 0) fail(Errc::InvalidArgument, "empty domain");
    if (table.size() != n * n) fail(Errc::InvalidArgument, "distance table must be n*n");
    for (std::size_t i = 0; i < n; ++i) {
        if (table[i * n + i] != Rational(0)) fail(Errc::InvalidArgument, "distance table diagonal must be zero");
        for (std::size_t j = 0; j < n; ++j) {
            if (table[i * n + j] < Rational(0)) fail(Errc::InvalidArgument, "distances must be non-negative");
            if (table[i * n + j] != table[j * n + i]) fail(Errc::InvalidArgument, "distance table must be symmetric");
        }
    }
    Metric d;
    d.kind_ = MetricKind::Matrix;
    d.n_ = n;
    d.table_ = std::move(table);
    d.name_ = std::move(name);
    return d;
}

Rational Metric::operator()(Instance x, Instance y) const {
    switch (kind_) {
        case MetricKind::Hamming: return Rational(static_cast<std::int64_t>(clab::hamming(x, y)));
        case MetricKind::Discrete: return Rational(x == y ? 0 : 1);
        case MetricKind::GridL1: {
            std::int64_t total = 0;
            for (std::size_t k = sides_.size(); k-- > 0;) {
                const auto a = static_cast<std::int64_t>(x % sides_[k]);
                const auto b = static_cast<std::int64_t>(y % sides_[k]);
                total += a > b ? a - b : b - a;
                x /= sides_[k];
                y /= sides_[k];
            }
            return Rational(total);
        }
        case MetricKind::Matrix: return table_[x * n_ + y];
    }
    return Rational(0);
}

std::vector<Rational> Metric::spectrum(Instance x) const {
    if (kind_ == MetricKind::Hamming) {
        std::vector<Rational> out;
        for (std::size_t k = 1; k <= m_; ++k) out.emplace_back(static_cast<std::int64_t>(k));
        return out;
    }
    if (kind_ == MetricKind::Discrete) {
        if (n_ == 1) return {};
        return {Rational(1)};
    }
    std::vector<Rational> out;
    for (Instance y = 0; y < n_; ++y) {
        if (y != x) out.push_back((*this)(x, y));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::size_t Metric::s_d() const {
    if (kind_ == MetricKind::Hamming) return m_;
    if (kind_ == MetricKind::Discrete) return n_ > 1 ? 1 : 0;
    std::size_t best = 0;
    for (Instance x = 0; x < n_; ++x) best = std::max(best, spectrum(x).size());
    return best;
}

std::size_t hamming(Instance x, Instance y) { return static_cast<std::size_t>(std::popcount(x ^ y)); }

int discrete(Instance x, Instance y) { return x == y ? 0 : 1; }

std::size_t vs_disagreements(const VersionSpace& vs, Instance x, Instance y) {
    const auto& cls = vs.cls();
    return ((cls.positives_at(x) ^ cls.positives_at(y)) & vs.mask()).count();
}

Rational vs_distance(const VersionSpace& vs, Instance x, Instance y) {
    const auto size = vs.size();
    if (size == 0) fail(Errc::EmptyVersionSpace, "distance over an empty version space");
    return Rational(static_cast<std::int64_t>(vs_disagreements(vs, x, y)), static_cast<std::int64_t>(size));
}

Metric parse_matrix_csv(const std::string& text, std::string name) {
    std::vector<Rational> table;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        std::istringstream ls(line);
        std::string cell;
        std::size_t count = 0;
        while (std::getline(ls, cell, ',')) {
            table.push_back(parse_rational(cell));
            ++count;
        }
        if (rows == 0) cols = count;
        else if (count != cols) fail(Errc::ParseError, "ragged distance matrix at row " + std::to_string(rows + 1));
        ++rows;
    }
    if (rows == 0 || rows != cols) fail(Errc::ParseError, "distance matrix must be square and non-empty");
    try {
        return Metric::matrix(rows, std::move(table), std::move(name));
    } catch (const Error& e) {
        fail(Errc::ParseError, e.what());
    }
}

Metric load_matrix_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) fail(Errc::ConfigError, "cannot open metric file " + path);
    std::stringstream buf;
    buf << f.rdbuf();
    return parse_matrix_csv(buf.str(), "csv:" + path);
}

namespace {

// For each unordered pair of instances, which of the 4 label patterns occur.
struct PairPatterns {
    std::size_t n;
    std::vector<std::uint8_t> seen;

    explicit PairPatterns(std::size_t n_) : n(n_), seen(n_ * n_, 0) {}

    static std::uint8_t bit(const Concept& c, Instance a, Instance b) {
        return static_cast<std::uint8_t>(1u << ((c(a) ? 2 : 0) + (c(b) ? 1 : 0)));
    }
    bool would_shatter(const Concept& c) const {
        for (Instance a = 0; a < n; ++a) {
            for (Instance b = a + 1; b < n; ++b) {
                if ((seen[a * n + b] | bit(c, a, b)) == 0xF) return true;
            }
        }
        return false;
    }
    void add(const Concept& c) {
        for (Instance a = 0; a < n; ++a) {
            for (Instance b = a + 1; b < n; ++b) seen[a * n + b] |= bit(c, a, b);
        }
    }
};

bool extend_rec(std::vector<Concept>& current, std::unordered_set<Bits, BitsHash>& present,
                const PairPatterns& patterns, std::size_t n, std::size_t target_size) {
    if (current.size() == target_size) return true;
    const std::size_t total = std::size_t{1} << n;
    for (std::size_t code = 0; code < total; ++code) {
        Bits b(n);
        for (std::size_t i = 0; i < n; ++i) {
            if ((code >> i) & 1u) b.set(i);
        }
        if (present.count(b)) continue;
        Concept c(b);
        if (patterns.would_shatter(c)) continue;
        PairPatterns next = patterns;
        next.add(c);
        current.push_back(c);
        present.insert(b);
        if (extend_rec(current, present, next, n, target_size)) return true;
        present.erase(b);
        current.pop_back();
    }
    return false;
}

}  // namespace

std::optional<std::vector<Concept>> extend_vcd1(const ConceptClass& cls) {
    const std::size_t n = cls.domain_size();
    if (n > 20) fail(Errc::CapExceeded, "VCD-1 extension limited to 20 instances");
    if (cls.size() > n + 1) return std::nullopt;
    std::vector<Concept> current = cls.concepts();
    std::unordered_set<Bits, BitsHash> present;
    PairPatterns patterns(n);
    for (const auto& c : current) {
        if (patterns.would_shatter(c)) return std::nullopt;
        patterns.add(c);
        present.insert(c.labels);
    }
    if (!extend_rec(current, present, patterns, n, n + 1)) return std::nullopt;
    return current;
}

Vcd1Construction vcd1_metric(const ConceptClass& cls) {
    if (vcd(cls) != 1) fail(Errc::NotVcdOne, "class '" + cls.name() + "' does not have VC dimension 1");
    auto ext = extend_vcd1(cls);
    if (!ext) fail(Errc::OrderingNotFound, "no extension to n+1 concepts at VC dimension 1");
    const std::size_t n = cls.domain_size();

    std::vector<Concept> remaining = *ext;
    std::vector<bool> used(n, false);
    Vcd1Construction out{Metric::discrete(n), {}, {}};
    for (std::size_t step = 0; step < n; ++step) {
        bool found = false;
        for (Instance x = 0; x < n && !found; ++x) {
            if (used[x]) continue;
            for (int b = 0; b <= 1 && !found; ++b) {
                std::size_t hits = 0;
                std::size_t which = 0;
                for (std::size_t i = 0; i < remaining.size(); ++i) {
                    if (remaining[i](x) == (b == 1)) {
                        ++hits;
                        which = i;
                    }
                }
                if (hits != 1) continue;
                found = true;
                used[x] = true;
                out.ordering.emplace_back(x, b == 1);
                out.extended.push_back(remaining[which]);
                remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(which));
            }
        }
        if (!found) fail(Errc::OrderingNotFound, "elimination stalls after " + std::to_string(step) + " steps");
    }
    out.extended.push_back(remaining.front());

    std::vector<Rational> table(n * n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const auto xi = out.ordering[i].first;
            const auto xj = out.ordering[j].first;
            const auto gap = static_cast<std::int64_t>(i > j ? i - j : j - i);
            table[xi * n + xj] = out.ordering[i].second == out.ordering[j].second
                                     ? Rational(gap)
                                     : Rational(static_cast<std::int64_t>(n));
        }
    }
    out.metric = Metric::matrix(n, std::move(table), "vcd1");
    return out;
}

}  // namespace clab
