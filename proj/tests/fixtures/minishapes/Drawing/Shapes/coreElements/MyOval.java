package Drawing.Shapes.coreElements;

import java.awt.Color;
import java.awt.Graphics;

/**
 * Class that declares an oval object
 */
public class MyOval extends MyShape {
    private boolean filled;

    public MyOval() {
        super();
    }

    public MyOval(int x1, int y1, int x2, int y2, Color color, boolean filled) {
        super(x1, y1, x2, y2, color);
        this.filled = filled;
    }

    public int getUpperLeftX() {
        return Math.min(getX1(), getX2());
    }

    public int getWidth() {
        return Math.abs(getX2() - getX1());
    }

    @Override
    public void draw(Graphics g) {
        g.setColor(getColor());
        int left = getUpperLeftX();
        int top = Math.min(getY1(), getY2());
        int height = Math.abs(getY2() - getY1());
        // pick the outline or the filled variant
        if (filled) {
            g.fillOval(left, top, getWidth(), height);
        } else {
            g.drawOval(left, top, getWidth(), height);
        }
    }
}
