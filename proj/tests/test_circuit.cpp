#include <doctest.h>

#include "fluidlogic/circuit.hpp"
#include "fluidlogic/logic.hpp"

using namespace fluidlogic;

namespace {

// the minimal OR arrangement: two driven ports, checks into a tee, one outlet
constexpr const char* kMinimalOr =
    "src in1 a 80kPa\n"
    "src in2 b 0kPa\n"
    "check c1 a ta\n"
    "check c2 b tb\n"
    "tee t1 ta tb tc\n"
    "hose h1 tc amb length=5cm diameter=2.5mm\n"
    "tank gnd amb\n";

}  // namespace

TEST_CASE("tee merging gives the expected node and branch counts") {
    const CircuitGraph g = validate(parse_netlist(kMinimalOr));
    CHECK(g.node_count() == 4);  // a, b, merged tee node, amb
    CHECK(g.branch_count() == 3);  // two checks and the hose
}

TEST_CASE("missing ambient reference is rejected") {
    CHECK_THROWS_WITH_AS(
        validate(parse_netlist("src p1 n1 80kPa\nhose h1 n1 n2 length=5cm diameter=2.5mm\n")),
        doctest::Contains("ambient"), ValidateError);
}

TEST_CASE("unreachable nodes are rejected") {
    const char* floating =
        "src p1 n1 80kPa\n"
        "hose h1 n1 n2 length=5cm diameter=2.5mm\n"
        "tank amb n2\n"
        "hose h2 u v length=5cm diameter=2.5mm\n";
    CHECK_THROWS_WITH_AS(validate(parse_netlist(floating)), doctest::Contains("reachable"),
                         ValidateError);
}

TEST_CASE("probes must reference touched nodes") {
    CHECK_THROWS_AS(validate(parse_netlist("src p1 n1 80kPa\ntank amb n1x\nprobe q nowhere\n")),
                    ValidateError);
}

TEST_CASE("two sources on one hydraulic node short") {
    CHECK_THROWS_WITH_AS(
        validate(parse_netlist("src p1 n1 80kPa\nsrc p2 n1 10kPa\n"
                               "hose h n1 n2 length=5cm diameter=2.5mm\ntank amb n2\n")),
        doctest::Contains("source-source short"), ValidateError);
    // also through a tee merge
    CHECK_THROWS_AS(validate(parse_netlist("src p1 a 80kPa\nsrc p2 b 10kPa\ntee t a b c\n"
                                           "hose h c amb length=5cm diameter=2.5mm\ntank g amb\n")),
                    ValidateError);
}

TEST_CASE("physical parameter ranges are enforced") {
    CHECK_THROWS_AS(
        validate(parse_netlist("src p1 n1 80kPa\nhose h n1 n2 length=5cm diameter=0\ntank g n2\n")),
        ValidateError);
    CHECK_THROWS_AS(validate(parse_netlist(
                        "src p1 n1 80kPa\nand g1 in=n1 out=n2 ctrl=n1 cq=0.5\ntank g n2\n")),
                    ValidateError);
    CHECK_THROWS_AS(validate(parse_netlist(
                        "src p1 n1 80kPa\nand g1 in=n1 out=n2 ctrl=n1 d0=4mm\ntank g n2\n")),
                    ValidateError);
    CHECK_THROWS_AS(validate(parse_netlist(
                        "src p1 n1 80kPa\nnot g1 in=n1 out=n2 ctrl=n1 p_lo=2kPa p_hi=1kPa\n"
                        "tank g n2\n")),
                    ValidateError);
}

TEST_CASE("input and aux markers must name sources") {
    CHECK_THROWS_AS(validate(parse_netlist("src p1 n1 80kPa\ntank g n1x\ninput nope\n")),
                    ValidateError);
    CHECK_THROWS_AS(validate(parse_netlist("src p1 n1 80kPa\ntank g n1x\ninput p1\naux p1\n")),
                    ValidateError);
}

TEST_CASE("half adder templates validate with two inputs and two probes") {
    for (auto v : {HalfAdderVariant::type1, HalfAdderVariant::type2}) {
        const CircuitGraph g = validate(half_adder_template(v));
        CHECK(g.input_order == std::vector<std::string>{"in1", "in2"});
        CHECK(g.probe_order == std::vector<std::string>{"Sum", "Carry"});
    }
}

TEST_CASE("half adder component census") {
    auto census = [](const Netlist& nl, ComponentKind k) {
        int n = 0;
        for (const auto& c : nl.components) n += c.kind == k;
        return n;
    };
    const GateLibrary lib;
    const Netlist t1 = lib.half_adder(HalfAdderVariant::type1);
    CHECK(census(t1, ComponentKind::notgate) == 2);
    CHECK(census(t1, ComponentKind::andgate) == 1);
    CHECK(census(t1, ComponentKind::check) == 2);  // the OR stage
    CHECK(census(t1, ComponentKind::tee) == 1);

    const Netlist t2 = lib.half_adder(HalfAdderVariant::type2);
    CHECK(census(t2, ComponentKind::notgate) == 3);
    CHECK(census(t2, ComponentKind::andgate) == 0);
    CHECK(census(t2, ComponentKind::check) == 2);
    CHECK(census(t2, ComponentKind::tee) == 1);
    // the auxiliary carry supply
    CHECK(t2.aux_sources == std::vector<std::string>{"sup3"});

    // interconnect budget: nine 5 cm segments = the 45 cm of hose per adder
    for (const Netlist* nl : {&t1, &t2}) {
        double total = 0.0;
        for (const auto& c : nl->components)
            if (c.kind == ComponentKind::hose) total += c.params.at("length").si;
        CHECK(total == doctest::Approx(0.45));
    }
}
