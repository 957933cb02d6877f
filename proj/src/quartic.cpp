#include "qf/fltclaims.hpp"

#include "qf/factor.hpp"

#include <algorithm>
#include <functional>

namespace qf {

namespace {

using KM = MPoly<FieldElement>;

/* unknowns lambda', lambda, mu', mu, then z */
constexpr int NV = 5;
constexpr int LP = 0, LA = 1, MP = 2, MU = 3, Z = 4;
const char* const VAR_NAMES[NV] = {"lambda'", "lambda", "mu'", "mu", "z"};

std::vector<std::string> names()
{
    return std::vector<std::string>(VAR_NAMES, VAR_NAMES + NV);
}

KM var(const FieldDescriptor* K, int i) { return KM::var(NV, i, K->zero()); }
KM cst(const FieldElement& c) { return KM::constant(NV, c); }

struct CaseData {
    FieldElement z1, z2, Y1, Y2;
};

CaseData case_data(int id, const FieldDescriptor* L)
{
    FieldElement r2 = L->n == 1 ? L->zero() : L->sqrt_of(2);
    FieldElement one = L->one();
    FieldElement z1, z2 = L->zero();
    switch (id) {
    case 1: z1 = L->zero(); break;
    case 2: z1 = -one; z2 = one; break;
    case 3: z1 = one; break;
    case 4: z1 = -one; break;
    case 5: z1 = -one + r2; break;
    case 6: z1 = -one - r2; break;
    case 7: z1 = L->zero(); z2 = one; break;
    case 8: z1 = one; z2 = one; break;
    case 9: z1 = -one + r2; z2 = one; break;
    case 10: z1 = -one - r2; z2 = one; break;
    default: throw domain_error("quartic case id must be 1..10");
    }
    CaseData d{z1, z2, {}, {}};
    FieldElement w1 = L->from_rat(2) * z1 * (one - z1 * z1);
    FieldElement w2 = L->from_rat(2) * z2 * (one + z2 * z2);
    if (!is_square(w1, &d.Y1) || !is_square(w2, &d.Y2))
        throw internal_error("case z-values are not L-points of the two elliptic curves");
    return d;
}

/* G1 = (lambda + mu z)^2 - 2z(1 - z^2), G2 = (lambda' + mu' z)^2 - 2z(1 + z^2) */
KM g1(const FieldDescriptor* K)
{
    KM a = var(K, LA) + var(K, MU) * var(K, Z);
    KM z = var(K, Z);
    return a * a - cst(K->from_rat(2)) * z + cst(K->from_rat(2)) * z.pow(3);
}
KM g2(const FieldDescriptor* K)
{
    KM b = var(K, LP) + var(K, MP) * var(K, Z);
    KM z = var(K, Z);
    return b * b - cst(K->from_rat(2)) * z - cst(K->from_rat(2)) * z.pow(3);
}

struct System {
    std::vector<KM> linear;
    std::vector<KM> coeffs; // z^0, z^1, ...
    std::vector<KM> all() const
    {
        std::vector<KM> v = linear;
        v.insert(v.end(), coeffs.begin(), coeffs.end());
        return v;
    }
};

System build_system(const CaseData& d, int s1, int s2, const FieldDescriptor* K)
{
    System S;
    FieldElement S1 = K->from_rat(s1), S2 = K->from_rat(s2);
    S.linear.push_back(var(K, LA) + cst(d.z1) * var(K, MU) - cst(S1 * d.Y1));
    S.linear.push_back(var(K, LP) + cst(d.z2) * var(K, MP) - cst(S2 * d.Y2));
    KM z = var(K, Z);
    KM E = d.z1 == d.z2 ? g1(K) + g2(K) : (z - cst(d.z2)) * g1(K) + (z - cst(d.z1)) * g2(K);
    S.coeffs = E.coeffs_in(Z);
    return S;
}

bool is_unit_ideal(const std::vector<KM>& G)
{
    return G.size() == 1 && G[0].is_constant() && !G[0].is_zero();
}

KM substitute(KM p, const std::vector<std::pair<int, FieldElement>>& vals)
{
    for (auto& [v, x] : vals)
        p = p.subst(v, cst(x));
    return p;
}

/* L-points of a zero-dimensional lex basis in the unknowns MU, MP, LA, LP */
std::vector<std::array<FieldElement, 4>> solve_basis(const std::vector<KM>& G, const FieldDescriptor* K)
{
    std::vector<std::array<FieldElement, 4>> out;
    if (is_unit_ideal(G))
        return out;
    std::vector<std::pair<int, FieldElement>> vals;
    std::function<void(int)> rec = [&](int v) {
        if (v < 0) {
            std::array<FieldElement, 4> s;
            for (auto& [w, x] : vals)
                s[w] = x;
            out.push_back(s);
            return;
        }
        KPoly g(K->zero());
        bool any = false;
        for (const KM& p : G) {
            bool inside = true;
            for (int w = 0; w < v; ++w)
                inside = inside && !p.uses(w);
            if (!inside || !p.uses(v))
                continue;
            KM q = substitute(p, vals);
            if (q.is_zero())
                continue;
            KPoly u = to_univariate(q, v);
            g = any ? poly_gcd(g, u) : u;
            any = true;
        }
        if (!any)
            throw internal_error(std::string("quartic system is not zero-dimensional in ") + VAR_NAMES[v]);
        if (g.deg() == 0)
            return;
        for (const FieldElement& r : roots_in_field(g)) {
            vals.emplace_back(v, r);
            rec(v - 1);
            vals.pop_back();
        }
    };
    rec(MU);
    return out;
}

KPoly zpoly(const std::vector<FieldElement>& c) { return kpoly(c); }

QuarticSolution classify(const std::array<FieldElement, 4>& s, const CaseData& d, int s1, int s2,
                         const FieldDescriptor* K)
{
    QuarticSolution q;
    q.s1 = s1;
    q.s2 = s2;
    q.lm = {s[LA], s[MU], s[LP], s[MP]};
    FieldElement two = K->from_rat(2);
    /* (lambda + mu z)^2 - 2z + 2z^3 */
    KPoly G1 = zpoly({s[LA] * s[LA], two * s[LA] * s[MU] - two, s[MU] * s[MU], two});
    KPoly G2 = zpoly({s[LP] * s[LP], two * s[LP] * s[MP] - two, s[MP] * s[MP], -two});
    auto [F, r] = divmod(G1, zpoly({-two * d.z1, two}));
    auto [F2, r2] = divmod(G2, zpoly({two * d.z2, -two}));
    if (!r.is_zero() || !r2.is_zero() || F != F2)
        throw internal_error("quartic solution does not factor through a common F");
    q.F = F;
    if (!roots_in_field(F).empty())
        q.verdict = "reducible";
    else if (F == zpoly({K->one(), K->zero(), K->one()}))
        q.verdict = "t^2=-1";
    else
        q.verdict = "field";
    return q;
}

std::string coeff_name(int k) { return k == 0 ? "constant term" : "z^" + std::to_string(k) + " coefficient"; }

struct Relation {
    KM P, Q;
    FieldElement c;
    std::string text;
    bool present = false;
};

Relation named_relation(int id, const FieldDescriptor* L)
{
    Relation R;
    FieldElement r2 = L->sqrt_of(2), one = L->one(), two = L->from_rat(2);
    KM l = var(L, LA), m = var(L, MU), mp = var(L, MP), unit = cst(one);
    KM mp2 = mp - cst(two);
    R.present = true;
    switch (id) {
    case 3: R = {l, unit, -two, "lambda^2 = -2 with lambda in L", true}; break;
    case 4: R = {m, unit, two, "mu^2 = 2", true}; break;
    case 5: R = {l, unit, two * (one - r2), "lambda^2 = 2(1-r2) < 0 with lambda in L", true}; break;
    case 6: R = {l, unit, two * (one + r2), "lambda^2 = 2(1+r2) with lambda in L", true}; break;
    case 7: R = {mp2, unit, -two, "(mu'-2)^2 = -2 with mu' in L", true}; break;
    case 8: R = {m, mp, -one, "mu^2 = -mu'^2", true}; break;
    case 9: R = {mp2, l, -(one + r2), "(mu'-2)^2 = -lambda^2(1+r2) with lambda, mu' in L", true}; break;
    case 10: R = {l, mp2, one + r2, "lambda^2 = (mu'-2)^2(1+r2) with lambda, mu' in L", true}; break;
    default: R.present = false;
    }
    return R;
}

std::string rat_field_name(const Rat& disc)
{
    /* squarefree kernel of a rational */
    Int n = disc.get_num() * disc.get_den();
    int sg = sgn(n);
    n = abs(n);
    Int k = 1;
    for (auto& [q, e] : factor_integer(n).factors)
        if (e % 2)
            k *= q;
    return "Q(r2, sqrt(" + std::string(sg < 0 ? "-" : "") + to_string(k) + "))";
}

} // namespace

const char* quartic_outcome_name(QuarticOutcome o)
{
    return o == QuarticOutcome::Field ? "field" : "contradiction";
}

QuarticCase quartic_case_analysis(int id)
{
    const FieldDescriptor* L = quadratic_field(2);
    CaseData d = case_data(id, L);
    QuarticCase C;
    C.id = id;
    C.z1 = d.z1;
    C.z2 = d.z2;
    std::vector<int> S1 = d.Y1.is_zero() ? std::vector<int>{1} : std::vector<int>{1, -1};
    std::vector<int> S2 = d.Y2.is_zero() ? std::vector<int>{1} : std::vector<int>{1, -1};
    std::vector<std::vector<KM>> bases;
    std::vector<std::pair<int, int>> signs;
    for (int s1 : S1)
        for (int s2 : S2) {
            System sys = build_system(d, s1, s2, L);
            for (const KM& g : sys.all())
                if (!g.is_zero())
                    C.system.push_back(g.str(names()));
            std::vector<KM> G = groebner_lex(sys.all());
            C.eliminants.push_back(G.empty() ? "0" : G.front().str(names()));
            for (const auto& s : solve_basis(G, L))
                C.solutions.push_back(classify(s, d, s1, s2, L));
            bases.push_back(G);
            signs.emplace_back(s1, s2);
        }

    const QuarticSolution* field_sol = nullptr;
    for (const auto& s : C.solutions)
        if (s.verdict == "field" && !field_sol)
            field_sol = &s;
    C.outcome = field_sol ? QuarticOutcome::Field : QuarticOutcome::Contradiction;

    /* same analysis over Q when all the case data is rational */
    bool rational_data = d.z1.is_rational() && d.z2.is_rational() && d.Y1.is_rational() && d.Y2.is_rational();
    if (rational_data) {
        const FieldDescriptor* Q = rational_field();
        CaseData dq{restrict_to(d.z1, Q), restrict_to(d.z2, Q), restrict_to(d.Y1, Q), restrict_to(d.Y2, Q)};
        size_t nq = 0;
        bool same = true;
        for (int s1 : S1)
            for (int s2 : S2) {
                std::vector<KM> G = groebner_lex(build_system(dq, s1, s2, Q).all());
                for (const auto& s : solve_basis(G, Q)) {
                    ++nq;
                    bool found = false;
                    for (const auto& t : C.solutions)
                        if (t.s1 == s1 && t.s2 == s2 && t.lm[0] == embed(s[LA], L) && t.lm[1] == embed(s[MU], L) &&
                            t.lm[2] == embed(s[LP], L) && t.lm[3] == embed(s[MP], L))
                            found = true;
                    same = same && found;
                }
            }
        C.reduces_to_rational = same && nq == C.solutions.size();
    }

    if (C.outcome == QuarticOutcome::Field) {
        C.F = field_sol->F;
        FieldElement disc = C.F[1] * C.F[1] - L->from_rat(4) * C.F[0];
        if (disc.is_rational()) {
            C.field_radicand = disc.rational_part();
            C.field = rat_field_name(C.field_radicand);
        } else {
            C.field = "L(sqrt(" + disc.str() + "))";
        }
        C.reason = "F(z) = " + C.F.str("z");
        /* rebuild the point over L[z]/(F) */
        TowerField T{L, C.F, C.field};
        KPoly th = T.theta();
        const auto& lm = field_sol->lm;
        KPoly A = T.reduce(T.from(lm[0]) + T.from(lm[1]) * th);
        KPoly B = T.reduce(T.from(lm[2]) + T.from(lm[3]) * th);
        KPoly x = T.mul(A, T.inv(B));
        KPoly y = T.mul(B, T.inv(T.from(L->one()) + T.mul(th, th)));
        C.recovered_point_ok = fermat_point_check(4, T, {x, y, T.from(L->one())});
        /* the printed relations between lambda and mu' */
        KM l = var(L, LA), mp = var(L, MP), two = cst(L->from_rat(2));
        std::vector<KM> rel = {l * l - (two - mp) * (two - mp), l * l - two - (two - mp * mp)};
        C.relation = "lambda^2 = (2-mu')^2, lambda^2 - 2 = 2 - mu'^2";
        C.relation_in_ideal = true;
        for (size_t i = 0; i < bases.size(); ++i)
            if (signs[i].second == 1)
                for (const KM& r : rel)
                    C.relation_in_ideal = C.relation_in_ideal && in_ideal(r, bases[i]);
        C.relation_certified = C.relation_in_ideal;
        return C;
    }

    Relation R = named_relation(id, L);
    if (!R.present) {
        bool unit = true;
        for (const auto& G : bases)
            unit = unit && is_unit_ideal(G);
        C.relation = "1 = 0";
        C.relation_in_ideal = unit;
        C.relation_certified = unit;
        C.reason = unit ? "the coefficient system is inconsistent" : "no L-solution";
        if (C.reduces_to_rational)
            C.reason += ", exactly as over Q";
        return C;
    }

    C.relation = R.text;
    KM rel = R.P * R.P - cst(R.c) * R.Q * R.Q;
    C.relation_in_ideal = true;
    for (size_t i = 0; i < bases.size(); ++i)
        if (signs[i].second == 1)
            C.relation_in_ideal = C.relation_in_ideal && in_ideal(rel, bases[i]);

    bool c_square = is_square(R.c);
    if (id == 4) {
        /* mu^2 = 2 is solvable in L; every solution has F = z^2 + 1 */
        bool all_t2 = !C.solutions.empty();
        for (const auto& s : C.solutions)
            all_t2 = all_t2 && s.verdict == "t^2=-1";
        C.relation_certified = C.relation_in_ideal && c_square && all_t2;
        C.relation = "t = 0";
        C.reason = "t = 0: mu^2 = 2 gives F(z) = z^2 + 1, so 1 + t^2 = 0 and (1+t^2)y^2 = 2t forces t = 0";
        return C;
    }
    if (R.Q.is_constant()) {
        C.relation_certified = C.relation_in_ideal && !c_square;
        C.reason = R.text;
        return C;
    }
    /* P^2 = c Q^2 with c not a square forces P = Q = 0 */
    bool certified = C.relation_in_ideal && !c_square;
    std::string yields;
    for (size_t i = 0; i < bases.size(); ++i) {
        if (signs[i].second != 1)
            continue;
        System sys = build_system(d, signs[i].first, signs[i].second, L);
        std::vector<KM> gens = sys.all();
        gens.push_back(R.P);
        gens.push_back(R.Q);
        certified = certified && is_unit_ideal(groebner_lex(gens));
        std::vector<KM> lin = sys.linear;
        lin.push_back(R.P);
        lin.push_back(R.Q);
        std::vector<KM> GL = groebner_lex(lin);
        if (yields.empty())
            for (size_t k = 0; k < sys.coeffs.size(); ++k) {
                KM r = normal_form(sys.coeffs[k], GL);
                if (!r.is_zero() && r.is_constant()) {
                    yields = coeff_name(static_cast<int>(k)) + " yields " + r.constant_term().str() + " = 0";
                    break;
                }
            }
    }
    C.relation_certified = certified;
    C.reason = R.text + " forces " + (id == 8 ? "mu = mu' = 0" : "both sides to vanish");
    if (!yields.empty())
        C.reason += "; " + yields;
    return C;
}

} // namespace qf
