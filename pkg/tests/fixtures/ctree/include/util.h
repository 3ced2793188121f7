/* util.h */
#ifndef INCLUDE_UTIL_H
#define INCLUDE_UTIL_H

#include "log.h"
#include "str.h"

#endif /* INCLUDE_UTIL_H */
