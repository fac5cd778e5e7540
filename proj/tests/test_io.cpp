#include <doctest.h>

#include "carnot/group.hpp"

TEST_CASE("placeholder test_io") { CHECK(true); }
