#include <doctest.h>

#include "fixtures.hpp"
