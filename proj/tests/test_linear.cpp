#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <fstream>
#include <set>

#include <json.hpp>

#include "fixture_util.hpp"
#include "tdq/classify.hpp"
#include "tdq/core.hpp"
#include "tdq/linear.hpp"

using namespace tdq;

namespace {

// Basis-level multiplication of a table without the distributivity guard.
LinearMap raw_table_map(const TernaryTable& t) {
    int n = t.order();
    LinearMap m(n, pow_int(n, 3));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) m.add(t.at(x, y, z), (x * n + y) * n + z, Rational(1));
    return m;
}

TernaryTable projection_table(int n) {
    TernaryTable t = TernaryTable::filled(n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) t.set(x, y, z, x);
    return t;
}

TernaryTable middle_table(int n) {
    TernaryTable t = TernaryTable::filled(n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) t.set(x, y, z, y);
    return t;
}

// A hand-built order-2 table violating distributivity: columns act as the
// identity except R_{0,1} = swap and R_{1,0} = constant 0. On the 5-tuple
// (0,1,0,0,1) the left side gives 1 and the right side gives 0.
TernaryTable non_shelf_table() {
    TernaryTable t = TernaryTable::filled(2);
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int z = 0; z < 2; ++z) t.set(x, y, z, x);
    t.set(0, 0, 1, 1);
    t.set(1, 0, 1, 0);
    t.set(0, 1, 0, 0);
    t.set(1, 1, 0, 0);
    return t;
}

LinearMap unit_at(int dim, int index) {
    LinearMap eta(dim, 1);
    eta.set(index, 0, Rational(1));
    return eta;
}

int dim2_code_of(const std::string& s) {
    if (s == "0") return 0;
    if (s == "x") return 1;
    if (s == "-x") return 2;
    if (s == "y") return 3;
    if (s == "-y") return 4;
    throw std::runtime_error("unknown signed-basis name " + s);
}

} // namespace

TEST_CASE("heap multiplications: associativity is total on abelian groups only") {
    for (int n : {2, 3}) {
        FiniteGroup g = FiniteGroup::cyclic(n);
        TernaryBialgebra b = linearize_set(heap(g));
        AssocReport rep = check_ternary_assoc(b.T, unit_at(n, g.identity()));
        REQUIRE(rep.total);
        REQUIRE(rep.weak);
        // The middle unit insertion is group inversion, so the unit laws hold
        // exactly when every element is self-inverse.
        REQUIRE(rep.unit_laws.has_value());
        REQUIRE(*rep.unit_laws == (n == 2));
    }
    FiniteGroup s3 = FiniteGroup::symmetric(3);
    TernaryBialgebra b = linearize_set(heap(s3));
    AssocReport rep = check_ternary_assoc(b.T);
    REQUIRE(!rep.total);
    REQUIRE(rep.weak);
    REQUIRE(!rep.unit_laws.has_value());
}

TEST_CASE("scalar and zero multiplications are totally associative") {
    LinearMap scalar(1, 1);
    scalar.set(0, 0, Rational(1));
    AssocReport rep = check_ternary_assoc(scalar, unit_at(1, 0));
    REQUIRE(rep.total);
    REQUIRE(rep.weak);
    REQUIRE(rep.unit_laws.has_value());
    REQUIRE(*rep.unit_laws);

    LinearMap zero = LinearMap::zero(2, 8);
    AssocReport zrep = check_ternary_assoc(zero);
    REQUIRE(zrep.total);
    REQUIRE(zrep.weak);
}

TEST_CASE("coassociativity reports") {
    CoassocReport glike = check_coassoc(group_like_coalgebra(2));
    REQUIRE(glike.total);
    REQUIRE(glike.weak);
    REQUIRE(glike.counital);

    // zero comultiplication: trivially coassociative, never counital
    Coalgebra zero(2, LinearMap::zero(8, 2), group_like_coalgebra(2).epsilon);
    CoassocReport zrep = check_coassoc(zero);
    REQUIRE(zrep.total);
    REQUIRE(zrep.weak);
    REQUIRE(!zrep.counital);

    // splitting each basis vector across the distinguished line
    TernaryBialgebra primitive = three_lie_to_ternary(ThreeLieAlgebra::abelian(2));
    CoassocReport prep = check_coassoc(primitive.coalgebra);
    REQUIRE(prep.total);
    REQUIRE(prep.weak);
    REQUIRE(prep.counital);

    // convolution comultiplication on group function spaces
    for (int n : {2, 3}) {
        CoassocReport frep = check_coassoc(function_algebra_coalgebra(FiniteGroup::cyclic(n)));
        REQUIRE(frep.total);
        REQUIRE(frep.weak);
        REQUIRE(frep.counital);
    }
}

TEST_CASE("compatibility checks") {
    for (const auto& line : load_lines("order2_tables.txt")) {
        TernaryBialgebra b = linearize_set(table_from_notation_string(line));
        REQUIRE(check_compatibility(b.T, b.coalgebra));
    }
    Coalgebra c2 = group_like_coalgebra(2);
    REQUIRE(check_compatibility(LinearMap::zero(2, 8), c2));
    LinearMap q(2, 8); // only the last basis triple maps anywhere
    q.set(0, 7, Rational(1));
    REQUIRE(check_compatibility(q, c2));
}

TEST_CASE("linear distributivity checks") {
    TernaryBialgebra h2 = linearize_set(heap(FiniteGroup::cyclic(2)));
    REQUIRE(check_linear_distributive(h2.T, h2.coalgebra));

    Coalgebra c2 = group_like_coalgebra(2);
    // constant map to a basis vector scaled by the triple counit
    LinearMap const_y(2, 8);
    for (int t = 0; t < 8; ++t) const_y.set(1, t, Rational(1));
    REQUIRE(check_linear_distributive(const_y, c2));

    // middle projection linearizes to a distributive map (the table is a shelf)
    REQUIRE(check_linear_distributive(raw_table_map(middle_table(2)), c2));

    // swapping the two diagonal triples breaks the identity
    LinearMap bad(2, 8);
    bad.set(1, 0, Rational(1)); // (x,x,x) -> y
    bad.set(0, 7, Rational(1)); // (y,y,y) -> x
    REQUIRE(!check_linear_distributive(bad, c2));
}

TEST_CASE("linearize_set mirrors the table-level axiom") {
    for (const TernaryTable& t :
         {projection_table(2), middle_table(3), heap(FiniteGroup::cyclic(2))}) {
        TernaryBialgebra b = linearize_set(t);
        REQUIRE(b.dim == t.order());
        REQUIRE(check_linear_distributive(b.T, b.coalgebra));
        REQUIRE(check_compatibility(b.T, b.coalgebra));
    }
    // the reference order-3 tables all linearize cleanly
    auto lines = load_lines("order3_tables.txt");
    TernaryBialgebra t21 = linearize_set(table_from_notation_string(lines[21]));
    REQUIRE(check_linear_distributive(t21.T, t21.coalgebra));
    REQUIRE(check_compatibility(t21.T, t21.coalgebra));

    TernaryTable bad = non_shelf_table();
    REQUIRE(!classify_structure(bad).is_shelf);
    REQUIRE_THROWS_AS(linearize_set(bad), std::invalid_argument);
    // the basis-level identity fails for exactly the same table
    REQUIRE(!check_linear_distributive(raw_table_map(bad), group_like_coalgebra(2)));
}

TEST_CASE("adjoining a unit line: compatibility holds, two exact defects") {
    auto lines3 = load_lines("order3_tables.txt");
    for (const TernaryTable& t : {heap(FiniteGroup::cyclic(2)), projection_table(2),
                                  table_from_notation_string(lines3[21])}) {
        int n = t.order();
        int w = n + 1;
        AugmentedResult res = augmented_construction(t);
        REQUIRE(res.bialgebra.dim == w);
        const LinearMap& q = res.bialgebra.T;
        // the two defining clauses
        for (int z = 1; z < w; ++z) REQUIRE(q.at(0, (0 * w + 0) * w + z) == Rational(1));
        REQUIRE(q.column(0).empty()); // distinguished triple multiplies to zero
        for (int x = 1; x < w; ++x) {
            REQUIRE(q.column((x * w + 0) * w + 0).empty());
            REQUIRE(q.column((0 * w + x) * w + 0).empty());
        }
        REQUIRE(check_compatibility(q, res.bialgebra.coalgebra));
        REQUIRE(check_coassoc(res.bialgebra.coalgebra).total);

        // the counit does not survive: the defect vanishes on pure set
        // triples and on (1,1,x), and is -1 on the other mixed triples
        REQUIRE(!res.counit_compatible);
        REQUIRE(res.counit_defect.at(0, ((1 * w + 1) * w + 1)) == Rational(0));
        REQUIRE(res.counit_defect.at(0, ((0 * w + 0) * w + 1)) == Rational(0));
        REQUIRE(res.counit_defect.at(0, ((1 * w + 0) * w + 0)) == Rational(-1));
        REQUIRE(res.counit_defect.at(0, 0) == Rational(-1));

        // distributivity does not survive either: the left side produces the
        // distinguished vector on (1,1,z,1,v) (inner q(1,1,z) = 1, then
        // q(1,1,v) = 1) while the right side vanishes there, so the defect
        // is +1 on the distinguished row at exactly those n^2 columns
        REQUIRE(!res.distributive);
        REQUIRE(!check_linear_distributive(q, res.bialgebra.coalgebra));
        size_t nonzero = 0;
        for (int col = 0; col < res.distributive_defect.cols(); ++col)
            nonzero += res.distributive_defect.column(col).size();
        REQUIRE(nonzero == static_cast<size_t>(n) * n);
        for (int z = 1; z < w; ++z)
            for (int v = 1; v < w; ++v) {
                int col = ((0 * w + 0) * w + z) * w * w + 0 * w + v;
                REQUIRE(res.distributive_defect.at(0, col) == Rational(1));
            }
    }
    REQUIRE_THROWS_AS(augmented_construction(non_shelf_table()), std::invalid_argument);
}

TEST_CASE("3-Lie algebras validate and convert") {
    ThreeLieAlgebra ab = ThreeLieAlgebra::abelian(3);
    REQUIRE(!ab.validate().has_value());
    TernaryBialgebra nb = three_lie_to_ternary(ab);
    REQUIRE(nb.dim == 4);
    REQUIRE(check_linear_distributive(nb.T, nb.coalgebra));
    REQUIRE(check_compatibility(nb.T, nb.coalgebra));

    ThreeLieAlgebra lc = ThreeLieAlgebra::levi_civita_4();
    REQUIRE(!lc.validate().has_value());
    // spot-check antisymmetrization: [e1,e0,e2] = -[e0,e1,e2] = -e3
    REQUIRE(lc.coeff(1, 0, 2, 3) == Rational(-1));
    REQUIRE(lc.coeff(0, 1, 2, 3) == Rational(1));
    REQUIRE(lc.coeff(0, 0, 2, 3) == Rational(0));
    TernaryBialgebra lb = three_lie_to_ternary(lc);
    REQUIRE(lb.dim == 5);
    REQUIRE(check_linear_distributive(lb.T, lb.coalgebra));
    REQUIRE(check_compatibility(lb.T, lb.coalgebra));
    REQUIRE(check_coassoc(lb.coalgebra).total);
    // the distinguished vector is not a unit for the multiplication
    AssocReport arep = check_ternary_assoc(lb.T, lb.eta);
    REQUIRE(arep.unit_laws.has_value());
    REQUIRE(!*arep.unit_laws);
}

TEST_CASE("a perturbed bracket fails both the validator and distributivity") {
    auto unit = [](int l, const Rational& s) {
        std::vector<Rational> v(4, Rational(0));
        v[l] = s;
        return v;
    };
    std::vector<Rational> perturbed(4, Rational(0));
    perturbed[3] = Rational(1);
    perturbed[0] = Rational(1); // [e0,e1,e2] = e3 + e0 instead of e3
    auto brackets = std::vector<std::pair<std::array<int, 3>, std::vector<Rational>>>{
        {{0, 1, 2}, perturbed},
        {{0, 1, 3}, unit(2, Rational(-1))},
        {{0, 2, 3}, unit(1, Rational(1))},
        {{1, 2, 3}, unit(0, Rational(-1))},
    };
    ThreeLieAlgebra bad = ThreeLieAlgebra::from_brackets_unchecked(4, brackets);
    auto defect = bad.validate();
    REQUIRE(defect.has_value());
    REQUIRE(defect->kind == "fundamental");
    REQUIRE_THROWS_AS(three_lie_to_ternary(bad), std::invalid_argument);
    TernaryBialgebra nb = three_lie_to_ternary_unchecked(bad);
    REQUIRE(!check_linear_distributive(nb.T, nb.coalgebra));

    // validator-distributivity equivalence on a rank-one bracket: whatever
    // the validator decides, the matrix identity agrees
    ThreeLieAlgebra rank1 = ThreeLieAlgebra::from_brackets_unchecked(
        3, {{{0, 1, 2}, {Rational(1), Rational(0), Rational(0)}}});
    TernaryBialgebra rb = three_lie_to_ternary_unchecked(rank1);
    REQUIRE(check_linear_distributive(rb.T, rb.coalgebra) == !rank1.validate().has_value());
}

TEST_CASE("heap bialgebras satisfy compatibility and weak associativity up to order 6") {
    for (int n = 2; n <= 6; ++n) {
        TernaryBialgebra b = linearize_set(heap(FiniteGroup::cyclic(n)));
        REQUIRE(check_compatibility(b.T, b.coalgebra));
        REQUIRE(check_ternary_assoc(b.T).weak);
    }
}

TEST_CASE("the dim-2 classification scan") {
    auto sols = classify_dim2_maps();
    // frozen regression count from the exhaustive scan, independently
    // confirmed by running the full matrix-identity check over all 390625
    // candidates: one self-negated zero map plus 256 sign pairs
    REQUIRE(sols.size() == 513);
    REQUIRE(std::is_sorted(sols.begin(), sols.end()));

    // closure under global negation and under the basis swap
    for (const auto& s : sols) {
        REQUIRE(std::binary_search(sols.begin(), sols.end(), s.negated()));
        REQUIRE(std::binary_search(sols.begin(), sols.end(), s.swapped()));
    }

    // the zero map is the unique self-negated solution
    REQUIRE(sols.front().codes == std::array<int, 8>{0, 0, 0, 0, 0, 0, 0, 0});
    int self_negated = 0;
    for (const auto& s : sols)
        if (s.negated() == s) ++self_negated;
    REQUIRE(self_negated == 1);

    // named members: q(y,y,y) = +-x, the constant +-y maps, and the
    // mixed-sign pair q(y,y,x)=+x, q(y,y,y)=-x
    auto contains = [&](std::array<int, 8> codes) {
        Dim2Solution s;
        s.codes = codes;
        return std::binary_search(sols.begin(), sols.end(), s);
    };
    REQUIRE(contains({0, 0, 0, 0, 0, 0, 0, 1}));
    REQUIRE(contains({0, 0, 0, 0, 0, 0, 0, 2}));
    REQUIRE(contains({3, 3, 3, 3, 3, 3, 3, 3}));
    REQUIRE(contains({4, 4, 4, 4, 4, 4, 4, 4}));
    REQUIRE(contains({0, 0, 0, 0, 0, 0, 1, 2}));

    // both order-2 linearizations: first projection and three-argument parity
    REQUIRE(contains({1, 1, 1, 1, 3, 3, 3, 3}));
    REQUIRE(contains({1, 3, 3, 1, 3, 1, 1, 3}));
}

TEST_CASE("dim-2 solutions satisfy the matrix identities") {
    auto sols = classify_dim2_maps();
    Coalgebra c2 = group_like_coalgebra(2);
    for (const auto& s : sols) {
        LinearMap q = s.to_linear_map();
        REQUIRE(check_linear_distributive(q, c2));
        REQUIRE(check_compatibility(q, c2));
    }
}

TEST_CASE("transcribed dim-2 chart columns are solutions") {
    std::ifstream in(std::string(TDQ_FIXTURES_DIR) + "/dim2_map_samples.json");
    REQUIRE(in.good());
    nlohmann::json j;
    in >> j;
    REQUIRE(j["basis_order"].size() == 8);
    REQUIRE(j["basis_order"][0] == "xxx");
    REQUIRE(j["basis_order"][7] == "yyy");
    auto sols = classify_dim2_maps();
    REQUIRE(j["maps"].size() == 15);
    for (const auto& m : j["maps"]) {
        Dim2Solution s;
        for (int t = 0; t < 8; ++t) s.codes[t] = dim2_code_of(m[t].get<std::string>());
        INFO("chart column " << s.to_string());
        REQUIRE(std::binary_search(sols.begin(), sols.end(), s));
    }
}

TEST_CASE("dim-2 round trips and printing") {
    Dim2Solution s;
    s.codes = {0, 1, 2, 3, 4, 0, 1, 2};
    REQUIRE(s.to_string() == "0,+x,-x,+y,-y,0,+x,-x");
    REQUIRE(s.negated().negated() == s);
    REQUIRE(s.swapped().swapped() == s);
    LinearMap q = s.to_linear_map();
    REQUIRE(q.at(0, 1) == Rational(1));
    REQUIRE(q.at(0, 2) == Rational(-1));
    REQUIRE(q.at(1, 3) == Rational(1));
    REQUIRE(q.at(1, 4) == Rational(-1));
    REQUIRE(q.column(0).empty());
}
