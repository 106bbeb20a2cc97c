#include <numbers>

#include "doctest.h"
#include "levstab/error.hpp"
#include "levstab/validation.hpp"

using namespace levstab;

TEST_CASE("a wrong ellipse width is caught") {
    ValidationOptions o;
    o.ellipses = [](EllipseKind k, const PhysicalParams& p, const ExcitationParams& e) {
        Ellipse el = ellipse(k, p, e);
        if (k == EllipseKind::A) el.k1 *= 1.01;
        return el;
    };
    const PhysicalParams p = baseline_params();
    const ExcitationParams e = baseline_excitation();
    CHECK(run_criterion(4, p, e, o).status == CriterionStatus::Fail);
    CHECK(run_criterion(12, p, e, o).status == CriterionStatus::Fail);
    CHECK(run_criterion(4, p, e).status == CriterionStatus::Pass);
    CHECK(run_criterion(12, p, e).status == CriterionStatus::Pass);
}

TEST_CASE("a shifted ellipse centre is caught") {
    ValidationOptions o;
    o.ellipses = [](EllipseKind k, const PhysicalParams& p, const ExcitationParams& e) {
        Ellipse el = ellipse(k, p, e);
        el.h2 *= 1.001;
        return el;
    };
    CHECK(run_criterion(2, baseline_params(), baseline_excitation(), o).status ==
          CriterionStatus::Fail);
}

TEST_CASE("zero amplitude skips the parametric criteria") {
    ExcitationParams e = baseline_excitation();
    e.A = 0.0;
    const ValidationReport r = run_validation(baseline_params(), e);
    REQUIRE(r.criteria.size() == 13);
    for (const CriterionResult& c : r.criteria) {
        const bool parametric =
            c.id == 4 || c.id == 5 || c.id == 6 || c.id == 7 || c.id == 12 || c.id == 13;
        CHECK(c.status == (parametric ? CriterionStatus::Skipped : CriterionStatus::Pass));
    }
    CHECK(r.passed());
    CHECK_FALSE(r.measured_factor);
}

TEST_CASE("criterion ids are checked") {
    CHECK_THROWS_AS(run_criterion(0, baseline_params(), baseline_excitation()), InvalidParameter);
    CHECK_THROWS_AS(run_criterion(14, baseline_params(), baseline_excitation()), InvalidParameter);
}

TEST_CASE("report JSON") {
    ValidationReport r;
    CriterionResult c;
    c.id = 1;
    c.name = "x";
    c.status = CriterionStatus::Pass;
    r.criteria.push_back(c);
    r.measured_factor = 1.0;
    const auto j = report_json(r);
    CHECK(j["passed"] == true);
    CHECK(j["criteria"][0]["status"] == "pass");
    CHECK(j["measured_factor"] == 1.0);
}
