#include <doctest.h>

#include <initializer_list>

#include "monitor_properties.hpp"

using namespace s3sim;
using namespace s3sim::testing;

// Scaled-down property runs; the acceptance suite repeats them at full size.

TEST_CASE("conforming streams never trip (50k iterations)") {
    const SoundnessResult r = run_soundness(2024, 50'000);
    CHECK(r.iterations >= 50'000);
    CHECK(r.violations == 0);
}

TEST_CASE("single faults trip with the matching verdict (500 per class)") {
    for (const VerdictKind kind :
         {VerdictKind::ExecTooLong, VerdictKind::ExecTooShort,
          VerdictKind::PeriodTooLong, VerdictKind::PeriodTooShort,
          VerdictKind::IdleSilence, VerdictKind::UnexpectedMessage}) {
        const CompletenessResult r = run_completeness(kind, 99, 500);
        INFO("class: ", to_string(kind));
        CHECK(r.cases == 500);
        CHECK(r.failures == 0);
    }
}
