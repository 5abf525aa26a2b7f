#include "lindyn/odometer.hpp"

#include <algorithm>
#include <sstream>

namespace lindyn::odometer {

long long branch_size(int j) {
    if (j < 1) throw InvalidDigit("digit positions start at 1");
    return j % 2 == 0 ? 2 : 2ll * j;
}

Rational digit_measure(int j, long long v) {
    long long sz = branch_size(j);
    if (v < 0 || v >= sz)
        throw InvalidDigit("digit " + std::to_string(v) + " out of range at position " +
                           std::to_string(j));
    if (j % 2 == 0) return Rational(1, 2);
    Rational two_pow = Rational(Int(1), Int(1) << j);
    if (v < j) return (1 - two_pow) / j;
    return two_pow / j;
}

long long depth_product(int depth) {
    if (depth < 0 || depth > kMaxDepth)
        throw InvalidDigit("depth must lie in [0, " + std::to_string(kMaxDepth) + "]");
    long long p = 1;
    for (int j = 1; j <= depth; ++j) p *= branch_size(j);
    return p;
}

long long Cylinder::val() const {
    long long v = 0, scale = 1;
    for (int j = 1; j <= depth(); ++j) {
        v += digits[static_cast<size_t>(j - 1)] * scale;
        scale *= branch_size(j);
    }
    return v;
}

Rational Cylinder::measure() const {
    Rational m(1);
    for (int j = 1; j <= depth(); ++j) m *= digit_measure(j, digits[static_cast<size_t>(j - 1)]);
    return m;
}

Cylinder Cylinder::from_val(int depth, long long val) {
    Cylinder c;
    for (int j = 1; j <= depth; ++j) {
        long long sz = branch_size(j);
        c.digits.push_back(val % sz);
        val /= sz;
    }
    return c;
}

Cylinder Cylinder::parse(const std::string& text) {
    std::string t = text;
    t.erase(std::remove_if(t.begin(), t.end(), [](char c) { return c == ' ' || c == '\t'; }),
            t.end());
    if (t.size() < 2 || t.front() != '[' || t.back() != ']')
        throw InvalidDigit("cylinder literal must look like [a1,a2,...]: " + text);
    Cylinder c;
    std::string body = t.substr(1, t.size() - 2);
    if (body.empty()) return c;  // whole space
    std::stringstream ss(body);
    std::string item;
    int j = 1;
    while (std::getline(ss, item, ',')) {
        if (j > kMaxDepth) throw InvalidDigit("cylinder deeper than the supported depth");
        long long v = std::stoll(item);
        if (v < 0 || v >= branch_size(j)) throw InvalidDigit("digit out of range in " + text);
        c.digits.push_back(v);
        ++j;
    }
    return c;
}

std::string Cylinder::str() const {
    std::string out = "[";
    for (size_t i = 0; i < digits.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(digits[i]);
    }
    return out + "]";
}

CylinderSet CylinderSet::whole_space() {
    CylinderSet s;
    s.whole_ = true;
    s.depth_ = 0;
    s.vals_ = {0};
    return s;
}

CylinderSet CylinderSet::of(const Cylinder& c) {
    return from_vals(c.depth(), {c.val()});
}

CylinderSet CylinderSet::from_vals(int depth, std::vector<long long> vals) {
    CylinderSet s;
    s.depth_ = depth;
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    long long pd = depth_product(depth);
    for (long long v : vals)
        if (v < 0 || v >= pd) throw InvalidDigit("cylinder value out of range");
    s.vals_ = std::move(vals);
    s.canonicalize();
    return s;
}

void CylinderSet::canonicalize() {
    whole_ = false;
    // reduce depth while the set is a union of complete sibling families
    while (depth_ > 0) {
        long long sz = branch_size(depth_);
        long long lower = depth_product(depth_ - 1);
        if (static_cast<long long>(vals_.size()) % sz != 0) break;
        std::map<long long, long long> parents;  // parent val -> child count
        for (long long v : vals_) ++parents[v % lower];
        bool complete = true;
        for (const auto& [pv, cnt] : parents) complete = complete && cnt == sz;
        if (!complete) break;
        std::vector<long long> reduced;
        for (const auto& [pv, cnt] : parents) reduced.push_back(pv);
        std::sort(reduced.begin(), reduced.end());
        vals_ = std::move(reduced);
        --depth_;
    }
    if (depth_ == 0 && vals_.size() == 1) whole_ = true;
}

Rational CylinderSet::measure() const {
    if (whole_) return Rational(1);
    Rational m(0);
    for (long long v : vals_) m += Cylinder::from_val(depth_, v).measure();
    return m;
}

CylinderSet CylinderSet::refined_to(int depth) const {
    if (depth < depth_) throw InvalidDigit("cannot refine to a shallower depth");
    if (empty()) {
        CylinderSet s;
        s.depth_ = depth;
        return s;
    }
    std::vector<long long> vals;
    long long here = depth_product(depth_);
    long long target = depth_product(depth);
    long long reps = target / here;
    for (long long v : vals_)
        for (long long k = 0; k < reps; ++k) vals.push_back(v + k * here);
    CylinderSet s;
    s.depth_ = depth;
    std::sort(vals.begin(), vals.end());
    s.vals_ = std::move(vals);
    // no canonicalize: refined_to is internal; callers re-canonicalize
    return s;
}

CylinderSet CylinderSet::image(long long n) const {
    if (empty()) return *this;
    long long pd = depth_product(depth_);
    std::vector<long long> vals;
    vals.reserve(vals_.size());
    for (long long v : vals_) vals.push_back(((v + n) % pd + pd) % pd);
    return from_vals(depth_, std::move(vals));
}

CylinderSet CylinderSet::intersect(const CylinderSet& other) const {
    int d = std::max(depth_, other.depth_);
    auto a = refined_to(d), b = other.refined_to(d);
    std::vector<long long> vals;
    std::set_intersection(a.vals_.begin(), a.vals_.end(), b.vals_.begin(), b.vals_.end(),
                          std::back_inserter(vals));
    return from_vals(d, std::move(vals));
}

CylinderSet CylinderSet::unite(const CylinderSet& other) const {
    int d = std::max(depth_, other.depth_);
    auto a = refined_to(d), b = other.refined_to(d);
    std::vector<long long> vals;
    std::set_union(a.vals_.begin(), a.vals_.end(), b.vals_.begin(), b.vals_.end(),
                   std::back_inserter(vals));
    return from_vals(d, std::move(vals));
}

bool CylinderSet::operator==(const CylinderSet& other) const {
    return depth_ == other.depth_ && vals_ == other.vals_ && whole_ == other.whole_;
}

std::string CylinderSet::str() const {
    if (whole_) return "X";
    if (empty()) return "{}";
    std::string out;
    for (size_t i = 0; i < vals_.size(); ++i) {
        if (i) out += " u ";
        out += Cylinder::from_val(depth_, vals_[i]).str();
    }
    return out;
}

CylinderStep CylinderStep::indicator(const CylinderSet& s) {
    CylinderStep f;
    f.depth = s.depth();
    for (long long v : s.vals()) f.amp[v] = Rational(1);
    if (s.is_whole()) f.amp[0] = Rational(1);
    return f;
}

CylinderStep apply_T(const CylinderStep& phi, long long n) {
    CylinderStep out;
    out.depth = phi.depth;
    long long pd = depth_product(phi.depth);
    for (const auto& [v, a] : phi.amp) out.amp[((v - n) % pd + pd) % pd] = a;
    return out;
}

CertReal step_lp_norm_pow(const CylinderStep& phi, const Rational& p, int prec_bits) {
    CertReal acc{Rational(0)};
    for (const auto& [v, a] : phi.amp) {
        Rational mu = Cylinder::from_val(phi.depth, v).measure();
        if (is_integer(p))
            acc += CertReal(pow_int(abs_rat(a), to_ll(numerator(p))) * mu);
        else
            acc += pow_rational(abs_rat(a), p, prec_bits) * CertReal(mu);
    }
    return acc;
}

namespace {

// least N >= 1 such that the value set (or amplitude table) is invariant under
// subtraction of N mod P_depth; N divides P_depth
template <typename Table>
long long least_shift_period(const Table& table, int depth) {
    long long pd = depth_product(depth);
    if (pd == 1) return 1;
    for (long long n = 1; n <= pd; ++n) {
        if (pd % n != 0) continue;  // invariance group is cyclic, test divisors
        bool ok = true;
        for (const auto& entry : table) {
            long long v = entry.first;
            long long shifted = ((v - n) % pd + pd) % pd;
            auto it = table.find(shifted);
            if (it == table.end() || !(it->second == entry.second)) {
                ok = false;
                break;
            }
        }
        if (ok) return n;
    }
    return pd;
}

}  // namespace

PeriodicCylinderReport periodic_point_cylinder(const CylinderSet& s) {
    PeriodicCylinderReport rep;
    rep.vec = CylinderStep::indicator(s);
    std::map<long long, int> table;
    for (long long v : s.vals()) table[v] = 1;
    if (s.is_whole() || s.empty()) {
        rep.period = 1;
        return rep;
    }
    rep.period = least_shift_period(table, s.depth());
    // exact verification
    CylinderSet shifted = s.image(-rep.period);
    if (!(shifted == s)) throw std::logic_error("period verification failed");
    return rep;
}

ConservativityEvidence conservativity_evidence(const CylinderSet& s, long long max_n) {
    if (s.empty() || s.measure() == 0)
        throw InvalidDigit("conservativity evidence needs a set of positive measure");
    for (long long n = 1; n <= max_n; ++n) {
        CylinderSet cap = s.intersect(s.image(-n));
        Rational mu = cap.measure();
        if (mu > 0) return {n, mu};
    }
    throw NotFoundWithinBound("no return found up to n = " + std::to_string(max_n));
}

StepApproxReport simple_function_approx(const CylinderStep& target, const Rational& p) {
    (void)p;
    StepApproxReport rep;
    rep.approx = target;
    rep.distance_pow = Rational(0);
    rep.period = least_shift_period(target.amp, target.depth);
    return rep;
}

}  // namespace lindyn::odometer
