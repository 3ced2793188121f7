/* memory.h */
#ifndef SRC_CORE_MEMORY_H
#define SRC_CORE_MEMORY_H

#include <stddef.h>

#endif /* SRC_CORE_MEMORY_H */
