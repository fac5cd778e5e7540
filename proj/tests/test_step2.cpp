#include <doctest.h>

#include "carnot/group.hpp"

TEST_CASE("placeholder test_step2") { CHECK(true); }
