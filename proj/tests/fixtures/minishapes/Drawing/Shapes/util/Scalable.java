package Drawing.Shapes.util;

/**
 * Something that can be resized by a factor.
 */
public interface Scalable {
    /** Smallest factor accepted by scale. */
    double MIN_FACTOR = 0.1;

    // Resize by the given factor
    void scale(double factor);
}
