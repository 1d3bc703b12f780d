#include "scope/catalog.hpp"
