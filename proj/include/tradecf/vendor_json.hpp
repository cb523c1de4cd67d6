// Single include point for the vendored nlohmann/json header.
#pragma once

#include <json.hpp>
