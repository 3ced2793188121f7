/* shadow.h */
#ifndef LIB_COMPAT_SHADOW_H
#define LIB_COMPAT_SHADOW_H

#include "legacy.h"

#endif /* LIB_COMPAT_SHADOW_H */
