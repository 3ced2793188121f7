/* texture.h */
#ifndef SRC_GFX_TEXTURE_H
#define SRC_GFX_TEXTURE_H

#include "config.h"

#endif /* SRC_GFX_TEXTURE_H */
