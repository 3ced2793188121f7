/* list.h */
#ifndef INCLUDE_LIST_H
#define INCLUDE_LIST_H

#include "config.h"

#endif /* INCLUDE_LIST_H */
