#include "qf/irreducibility.hpp"

#include "qf/factor.hpp"

#include <algorithm>
#include <thread>

namespace qf {

Int oesterle_bound(int d)
{
    if (d <= 0 || d % 2)
        throw domain_error("oesterle_bound needs an even positive degree");
    Int t = ipow(Int(3), d / 2) + 1;
    return t * t;
}

Int freitas_siksek_bound(int d, int h)
{
    if (d <= 0 || h <= 0)
        throw domain_error("freitas_siksek_bound needs positive degree and class number");
    Int t = ipow(Int(3), 6 * d * h) + 1;
    return t * t;
}

std::vector<Int> unit_power_residue_primes(const FieldElement& u, int m, int sign)
{
    if (sign != 1 && sign != -1)
        throw domain_error("sign must be +1 or -1");
    FieldElement w = u.pow(m) + u.K->from_rat(Rat(sign));
    if (w.is_zero())
        throw domain_error("degenerate unit power: " + u.str() + "^" + std::to_string(m) + " = " +
                           std::to_string(-sign));
    Rat N = field_norm(w);
    if (!is_integer(N))
        throw domain_error("non-integral norm for " + w.str());
    return factor_integer(N.get_num()).primes();
}

std::vector<UnitTableCell> unit_table(const FieldDescriptor* K)
{
    std::vector<UnitTableCell> out;
    for (char split : {'a', 'b'})
        for (int sc = 1; sc <= 3; ++sc) {
            FieldElement u = totally_positive_unit_for_case(K, sc);
            auto add = [&](int m, int sign) {
                UnitTableCell c{split, sc, u, m, sign, "", {}};
                c.label = (m == 1 ? std::string("u") : "u^" + std::to_string(m)) + (sign < 0 ? "-1" : "+1");
                c.primes = unit_power_residue_primes(u, m, sign);
                out.push_back(std::move(c));
            };
            if (split == 'a') {
                add(2, -1);
                add(2, 1);
            } else {
                for (int m = 1; m <= 4; ++m)
                    add(m, -1);
            }
        }
    return out;
}

std::set<Int> unit_table_row_primes(const FieldDescriptor* K, char split, int subcase)
{
    std::set<Int> s;
    for (const auto& c : unit_table(K))
        if (c.split == split && c.subcase == subcase)
            s.insert(c.primes.begin(), c.primes.end());
    return s;
}

namespace {

void require_biquadratic(const FieldDescriptor* K)
{
    if (K->n != 4)
        throw domain_error("the Kraus engine needs a biquadratic field");
}

void require_unramified(uint64_t p, const FieldDescriptor* K)
{
    if (p < 5 || !is_prime_u64(p))
        throw domain_error("Kraus check needs a prime p >= 5, got " + std::to_string(p));
    if (K->discriminant() % p == 0)
        throw domain_error(std::to_string(p) + " ramifies in " + K->name);
}

EscapeReport run_case(uint64_t p, const FieldDescriptor* K, char split, int subcase)
{
    EscapeReport R;
    R.p = p;
    R.kcase.split = split;
    R.kcase.subcase = subcase;
    R.kcase.radicand = K->rad[subcase];
    R.kcase.u = totally_positive_unit_for_case(K, subcase);
    const FFDescriptor* F = ff_field(p, 1);
    FFElement s;
    if (!ff_is_square(F->from_int(R.kcase.radicand), &s))
        throw domain_error(std::to_string(R.kcase.radicand) + " is not a square mod " + std::to_string(p));
    const FieldElement& u = R.kcase.u;
    int idx = K->radicand_index(R.kcase.radicand);
    for (int i = 0; i < K->n; ++i)
        if (i != 0 && i != idx && u.x[i] != 0)
            throw internal_error("unit outside its quadratic subfield");
    int g = split == 'a' ? 2 : 4;
    int f = split == 'a' ? 2 : 1;
    for (int r = 0; r < 2; ++r) {
        FFElement root = r ? -s : s;
        FFElement ub = F->from_rat(u.x[0]) + F->from_rat(u.x[idx]) * root;
        for (int m = 1; m <= g; ++m)
            if (ub.pow(static_cast<uint64_t>(f * m)) == F->one()) {
                R.surviving_by_root[r].insert(m);
                R.surviving_subset_sizes.insert(m);
            }
    }
    return R;
}

} // namespace

EscapeReport kraus_check_prime(uint64_t p, const FieldDescriptor* K)
{
    require_biquadratic(K);
    require_unramified(p, K);
    int l1 = legendre(Int(K->rad[1]), p), l2 = legendre(Int(K->rad[2]), p);
    char split = (l1 == 1 && l2 == 1) ? 'b' : 'a';
    int subcase = l1 == 1 ? 1 : (l2 == 1 ? 2 : 3);
    return run_case(p, K, split, subcase);
}

EscapeReport kraus_check_forced(uint64_t p, const FieldDescriptor* K, char split, int subcase)
{
    require_biquadratic(K);
    require_unramified(p, K);
    if ((split != 'a' && split != 'b') || subcase < 1 || subcase > 3)
        throw domain_error("unknown Kraus case");
    return run_case(p, K, split, subcase);
}

const std::vector<uint64_t>& torsion_primes_degree8()
{
    static const std::vector<uint64_t> s8 = primes_up_to(23);
    return s8;
}

PrimeWindow prime_window_report(const FieldDescriptor* K, uint64_t p_min, uint64_t p_max, int threads)
{
    require_biquadratic(K);
    if (p_min < 19)
        throw domain_error("prime window must start at 19 or above");
    PrimeWindow W;
    W.K = K;
    W.p_min = p_min;
    W.p_max = p_max;
    std::vector<uint64_t> ps;
    for (uint64_t p : primes_up_to(p_max))
        if (p >= p_min)
            ps.push_back(p);
    W.primes_checked = ps.size();

    // 0 eliminated, 1 survives, 2 ramified; bit 4 marks a root-choice split
    std::vector<int> status(ps.size(), 0);
    auto work = [&](size_t begin, size_t step) {
        for (size_t i = begin; i < ps.size(); i += step) {
            if (K->discriminant() % ps[i] == 0) {
                status[i] = 2;
                continue;
            }
            EscapeReport R = kraus_check_prime(ps[i], K);
            status[i] = R.survives() ? 1 : 0;
            if (R.surviving_by_root[0].empty() != R.surviving_by_root[1].empty())
                status[i] |= 4;
        }
    };
    size_t nt = static_cast<size_t>(std::max(1, threads));
    if (nt == 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (size_t t = 0; t < nt; ++t)
            pool.emplace_back(work, t, nt);
        for (auto& th : pool)
            th.join();
    }

    std::set<uint64_t> exc;
    for (size_t i = 0; i < ps.size(); ++i) {
        if (status[i] & 4)
            W.root_choice_consistent = false;
        if ((status[i] & 3) == 1)
            W.survivors.push_back(ps[i]);
        if ((status[i] & 3) == 2)
            W.ramified.push_back(ps[i]);
    }
    for (uint64_t p : torsion_primes_degree8())
        if (p >= p_min && p <= p_max)
            W.fixture_primes.push_back(p);
    exc.insert(W.survivors.begin(), W.survivors.end());
    exc.insert(W.fixture_primes.begin(), W.fixture_primes.end());
    exc.insert(W.ramified.begin(), W.ramified.end());
    W.exceptions.assign(exc.begin(), exc.end());
    return W;
}

} // namespace qf
