/* posix_io.h */
#ifndef LIB_COMPAT_POSIX_IO_H
#define LIB_COMPAT_POSIX_IO_H

#include <unistd.h>
#include "legacy.h"

#endif /* LIB_COMPAT_POSIX_IO_H */
