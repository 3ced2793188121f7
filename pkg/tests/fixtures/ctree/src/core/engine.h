/* engine.h */
#ifndef SRC_CORE_ENGINE_H
#define SRC_CORE_ENGINE_H

#include "entity.h"
#include "shadow.h"

#endif /* SRC_CORE_ENGINE_H */
